import init, { oscillate, ft_point, potential_curve } from "./pkg/fermat_osc_demo.js";

const $ = (id) => document.getElementById(id);
const val = (id) => parseFloat($(id).value);

function extent(arrays) {
  let lo = Infinity, hi = -Infinity;
  for (const a of arrays) for (const v of a) if (Number.isFinite(v)) { lo = Math.min(lo, v); hi = Math.max(hi, v); }
  if (lo === hi) { lo -= 1; hi += 1; }
  const pad = 0.05 * (hi - lo);
  return [lo - pad, hi + pad];
}

// series: [{xs, ys, color, dash}], hlines: [{y, color}]
function plot(canvas, series, { hlines = [], label = "" } = {}) {
  const ctx = canvas.getContext("2d");
  const { width: w, height: h } = canvas;
  const m = 36;
  ctx.clearRect(0, 0, w, h);
  const [x0, x1] = extent(series.map((s) => s.xs));
  const [y0, y1] = extent(series.map((s) => s.ys).concat(hlines.map((l) => [l.y])));
  const px = (x) => m + ((x - x0) / (x1 - x0)) * (w - m - 8);
  const py = (y) => h - m + 12 - ((y - y0) / (y1 - y0)) * (h - m);

  ctx.strokeStyle = "#999";
  ctx.fillStyle = "#555";
  ctx.font = "11px sans-serif";
  ctx.beginPath();
  ctx.moveTo(m, 4); ctx.lineTo(m, h - m + 12); ctx.lineTo(w - 8, h - m + 12);
  ctx.stroke();
  ctx.fillText(y1.toPrecision(3), 2, 12);
  ctx.fillText(y0.toPrecision(3), 2, h - m + 10);
  ctx.fillText(x0.toPrecision(3), m, h - 8);
  ctx.fillText(x1.toPrecision(3), w - 40, h - 8);
  ctx.fillText(label, m + 8, 14);

  for (const l of hlines) {
    ctx.strokeStyle = l.color;
    ctx.setLineDash([2, 3]);
    ctx.beginPath(); ctx.moveTo(m, py(l.y)); ctx.lineTo(w - 8, py(l.y)); ctx.stroke();
  }
  for (const s of series) {
    if (!s.ys.length) continue;
    ctx.strokeStyle = s.color;
    ctx.setLineDash(s.dash || []);
    ctx.lineWidth = 1.5;
    ctx.beginPath();
    s.xs.forEach((x, i) => (i ? ctx.lineTo(px(x), py(s.ys[i])) : ctx.moveTo(px(x), py(s.ys[i]))));
    ctx.stroke();
  }
  ctx.setLineDash([]);
  ctx.lineWidth = 1;
}

function table(el, rows) {
  el.innerHTML = rows.map(([k, v]) => `<tr><td>${k}</td><td class="v">${v}</td></tr>`).join("");
}

const fmt = (v, d = 6) => (Number.isFinite(v) ? v.toFixed(d) : "n/a");

function updateSystem() {
  for (const id of ["a", "phi0", "w2", "m0", "tmax"]) $(id).nextElementSibling.value = $(id).value;
  const [a, phi0, w2, m0, tmax] = ["a", "phi0", "w2", "m0", "tmax"].map(val);
  try {
    const o = oscillate(a, phi0, w2, m0, tmax);
    const t = o.t, x = o.x;
    plot($("xplot"), [
      { xs: t, ys: x, color: "#1f5fbf" },
      { xs: t, ys: o.fit_x, color: "#d0701a", dash: [5, 4] },
    ], { hlines: [{ y: o.x_ft, color: "#2a2" }], label: "x(t), sinusoid fit (dashed), x at FT point" });
    plot($("vplot"), [{ xs: t, ys: o.xdot, color: "#7a3fbf" }], { hlines: [{ y: 0, color: "#bbb" }], label: "ẋ(t)" });
    table($("stats"), [
      ["FT angle α (deg)", fmt(o.alpha_deg, 4)],
      ["x at FT point", fmt(o.x_ft)],
      ["speed at FT point", fmt(o.speed_at_ft)],
      ["far turning point", fmt(o.x_max)],
      ["period", fmt(o.period)],
      ["fit offset d", fmt(o.fit_offset)],
      ["fit amplitude A", fmt(o.fit_amplitude)],
      ["fit ω", fmt(o.fit_omega)],
      ["max energy drift", o.energy_drift.toExponential(2)],
    ]);
    const xft = o.x_ft;
    o.free();
    const pv = potential_curve(a, phi0, w2, 300);
    const xs = [], vs = [];
    for (let i = 0; i < pv.length; i += 2) { xs.push(pv[i]); vs.push(pv[i + 1]); }
    plot($("potential"), [{ xs, ys: vs, color: "#333" }], {
      hlines: [{ y: 0, color: "#bbb" }],
      label: `V(x), minimum near x = ${xft.toFixed(4)}`,
    });
    $("err").textContent = "";
  } catch (e) {
    $("err").textContent = e.message || String(e);
    for (const id of ["xplot", "vplot", "potential"]) $(id).getContext("2d").clearRect(0, 0, 1e4, 1e4);
    table($("stats"), []);
  }
}

const tri = { pts: [[0, 3.2], [-2.5, -1], [2.6, -1.2]], drag: -1 };
const S = 50, OX = 240, OY = 220;
const toPx = ([x, y]) => [OX + S * x, OY - S * y];
const fromPx = (u, v) => [(u - OX) / S, (OY - v) / S];

function updateTriangle() {
  for (const id of ["wa", "wb", "wc"]) $(id).nextElementSibling.value = $(id).value;
  const ctx = $("tri").getContext("2d");
  ctx.clearRect(0, 0, 480, 400);
  ctx.strokeStyle = "#888";
  ctx.beginPath();
  tri.pts.forEach((p, i) => { const [u, v] = toPx(p); i ? ctx.lineTo(u, v) : ctx.moveTo(u, v); });
  ctx.closePath();
  ctx.stroke();
  tri.pts.forEach((p, i) => {
    const [u, v] = toPx(p);
    ctx.fillStyle = "#1f5fbf";
    ctx.beginPath(); ctx.arc(u, v, 6, 0, 2 * Math.PI); ctx.fill();
    ctx.fillStyle = "#222";
    ctx.fillText(`A${i + 1}`, u + 8, v - 8);
  });
  const w = ["wa", "wb", "wc"].map(val);
  try {
    const [x, y, kase, residual, iters] = ft_point(tri.pts.flat(), w);
    const [u, v] = toPx([x, y]);
    ctx.strokeStyle = "#d0701a";
    ctx.setLineDash([3, 3]);
    for (const p of tri.pts) { const [pu, pv] = toPx(p); ctx.beginPath(); ctx.moveTo(u, v); ctx.lineTo(pu, pv); ctx.stroke(); }
    ctx.setLineDash([]);
    ctx.fillStyle = "#d0701a";
    ctx.beginPath(); ctx.arc(u, v, 5, 0, 2 * Math.PI); ctx.fill();
    table($("ftstats"), [
      ["case", kase === 0 ? "floating" : `absorbed at A${kase}`],
      ["point", `(${x.toFixed(6)}, ${y.toFixed(6)})`],
      ["residual", residual.toExponential(2)],
      ["iterations", iters],
    ]);
  } catch (e) {
    table($("ftstats"), [["error", e.message || String(e)]]);
  }
}

function pointer(ev) {
  const r = $("tri").getBoundingClientRect();
  return [ev.clientX - r.left, ev.clientY - r.top];
}

async function main() {
  await init();
  for (const id of ["a", "phi0", "w2", "m0", "tmax"]) $(id).addEventListener("input", updateSystem);
  for (const id of ["wa", "wb", "wc"]) $(id).addEventListener("input", updateTriangle);
  const c = $("tri");
  c.addEventListener("pointerdown", (ev) => {
    const [u, v] = pointer(ev);
    tri.drag = tri.pts.findIndex((p) => { const [pu, pv] = toPx(p); return Math.hypot(pu - u, pv - v) < 12; });
    if (tri.drag >= 0) c.setPointerCapture(ev.pointerId);
  });
  c.addEventListener("pointermove", (ev) => {
    if (tri.drag < 0) return;
    tri.pts[tri.drag] = fromPx(...pointer(ev));
    updateTriangle();
  });
  c.addEventListener("pointerup", () => { tri.drag = -1; });
  updateSystem();
  updateTriangle();
}

main();
