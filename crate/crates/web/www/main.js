import init, { spectrum, orbit_values, pair_profile, examples } from "./pkg/legendre_web.js";

const $ = (id) => document.getElementById(id);

function fail(el, e) {
  el.className = "err";
  el.textContent = String(e);
}

function showSpectrum() {
  const msg = $("spec-msg");
  const table = $("spec-table");
  table.innerHTML = "";
  msg.textContent = "";
  let rows;
  try {
    rows = JSON.parse(spectrum(Number($("spec-l").value)));
  } catch (e) {
    return fail(msg, e);
  }
  table.innerHTML = "<tr><th>[A, B]</th><th>3-square sums</th><th>triples for A</th><th>triples for B</th></tr>";
  for (const r of rows) {
    const tr = document.createElement("tr");
    if (!r.admissible) tr.className = "discarded";
    const cells = [
      `[${r.psd_pair.join(", ")}]`,
      r.square_sums.join(", "),
      r.witnesses_a.map((t) => `(${t.join(",")})`).join(" ") || "-",
      r.witnesses_b.map((t) => `(${t.join(",")})`).join(" ") || "-",
    ];
    for (const c of cells) {
      const td = document.createElement("td");
      td.textContent = c;
      tr.appendChild(td);
    }
    table.appendChild(tr);
  }
  const kept = rows.filter((r) => r.admissible).length;
  msg.className = "";
  msg.textContent = `${kept} admissible of ${rows.length} candidates`;
}

function showOrbitValues() {
  const msg = $("orb-msg");
  $("values").textContent = "";
  let v;
  try {
    v = JSON.parse(orbit_values(Number($("orb-l").value), $("orb-h").value, $("orb-c").value));
  } catch (e) {
    return fail(msg, e);
  }
  msg.className = "";
  const sizes = v.orbit_sizes.map(([s, n]) => `${n}x${s}`).join(" + ");
  msg.textContent = `H = {${v.subgroup.join(", ")}}, orbits ${sizes}: ${v.values.length} values`;
  $("values").textContent = v.values.join(", ");
}

function plot(p) {
  const c = $("plot");
  const g = c.getContext("2d");
  g.clearRect(0, 0, c.width, c.height);
  const pad = 30;
  const ymax = p.target * 1.05;
  const w = (c.width - 2 * pad) / p.lags.length;
  const y = (v) => c.height - pad - (v / ymax) * (c.height - 2 * pad);
  p.lags.forEach((_, i) => {
    const x = pad + i * w;
    g.fillStyle = "#4a7ab5";
    g.fillRect(x, y(p.psd_a[i]), Math.max(w * 0.9, 1), y(0) - y(p.psd_a[i]));
    g.fillStyle = "#e0a040";
    g.fillRect(x, y(p.psd_a[i] + p.psd_b[i]), Math.max(w * 0.9, 1), y(p.psd_a[i]) - y(p.psd_a[i] + p.psd_b[i]));
  });
  g.strokeStyle = "#b00";
  g.beginPath();
  g.moveTo(pad, y(p.target));
  g.lineTo(c.width - pad, y(p.target));
  g.stroke();
  g.fillStyle = "#000";
  g.fillText(`2l+2 = ${p.target}`, pad + 4, y(p.target) - 4);
  g.fillText("lag 1", pad, c.height - 10);
  g.fillText(`lag ${p.lags.length}`, c.width - pad - 40, c.height - 10);
}

function showProfile() {
  const msg = $("pp-msg");
  let p;
  try {
    p = JSON.parse(pair_profile($("pa").value, $("pb").value));
  } catch (e) {
    return fail(msg, e);
  }
  plot(p);
  if (p.legendre_pair) {
    msg.className = "ok";
    const third = p.psd_third ? `, PSD(l/3) = [${p.psd_third.join(", ")}]` : "";
    msg.textContent = `Legendre pair of length ${p.l}${third}`;
  } else {
    msg.className = "err";
    msg.textContent = `not a Legendre pair: ${p.failure}`;
  }
}

await init();
const ex = JSON.parse(examples());
for (const [i, e] of ex.entries()) {
  const o = document.createElement("option");
  o.value = i;
  o.textContent = e.label;
  $("ex").appendChild(o);
}
$("ex").addEventListener("change", () => {
  const e = ex[Number($("ex").value)];
  $("pa").value = e.a;
  $("pb").value = e.b;
  showProfile();
});
$("spec-go").addEventListener("click", showSpectrum);
$("orb-go").addEventListener("click", showOrbitValues);
$("pp-go").addEventListener("click", showProfile);
$("ex").value = ex.length > 1 ? 1 : 0;
$("ex").dispatchEvent(new Event("change"));
showSpectrum();
showOrbitValues();
