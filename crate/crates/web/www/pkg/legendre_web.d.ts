/* tslint:disable */
/* eslint-disable */

/**
 * Known pairs to preload in the page.
 */
export function examples(): string;

/**
 * Sorted `PSD(l/3)` values reachable with the given orbit composition.
 */
export function orbit_values(l: number, subgroup: string, composition: string): string;

/**
 * PSD of both sequences at lags `1..=(l-1)/2` and the pair verdict.
 */
export function pair_profile(a: string, b: string): string;

/**
 * Spectrum rows for `l`, discarded rows included.
 */
export function spectrum(l: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly examples: () => [number, number, number, number];
    readonly orbit_values: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly pair_profile: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly spectrum: (a: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
