import init, { simulate, dust_scan, eos_curve } from "./pkg/cosmofate_web.js";

const $ = (id) => document.getElementById(id);
const num = (id) => parseFloat($(id).value);

// Draws one or more polylines on a canvas with simple linear axes.
function plot(canvas, series, opts = {}) {
  const dpr = window.devicePixelRatio || 1;
  const w = canvas.clientWidth, h = canvas.clientHeight;
  canvas.width = w * dpr;
  canvas.height = h * dpr;
  const ctx = canvas.getContext("2d");
  ctx.scale(dpr, dpr);
  ctx.clearRect(0, 0, w, h);

  const pad = { l: 60, r: 12, t: 12, b: 32 };
  const finite = (v) => Number.isFinite(v);
  const xs = series.flatMap((s) => s.x.filter(finite));
  const ys = series.flatMap((s) => s.y.filter(finite));
  if (!xs.length || !ys.length) return;
  let [x0, x1] = [Math.min(...xs), Math.max(...xs)];
  let [y0, y1] = [Math.min(...ys), Math.max(...ys)];
  if (x0 === x1) { x0 -= 1; x1 += 1; }
  if (y0 === y1) { y0 -= 1; y1 += 1; }
  const X = (x) => pad.l + ((x - x0) / (x1 - x0)) * (w - pad.l - pad.r);
  const Y = (y) => h - pad.b - ((y - y0) / (y1 - y0)) * (h - pad.t - pad.b);

  ctx.strokeStyle = "#999";
  ctx.fillStyle = "#444";
  ctx.font = "11px system-ui";
  ctx.beginPath();
  ctx.moveTo(pad.l, pad.t);
  ctx.lineTo(pad.l, h - pad.b);
  ctx.lineTo(w - pad.r, h - pad.b);
  ctx.stroke();
  for (let i = 0; i <= 4; i++) {
    const xv = x0 + ((x1 - x0) * i) / 4, yv = y0 + ((y1 - y0) * i) / 4;
    ctx.fillText(xv.toPrecision(3), X(xv) - 12, h - pad.b + 14);
    ctx.fillText(yv.toPrecision(3), 4, Y(yv) + 4);
  }
  if (opts.xlabel) ctx.fillText(opts.xlabel, w - pad.r - 60, h - 4);
  if (opts.ylabel) ctx.fillText(opts.ylabel, pad.l + 4, pad.t + 10);

  for (const s of series) {
    ctx.strokeStyle = s.color || "#1f5fbf";
    ctx.fillStyle = s.color || "#1f5fbf";
    if (s.dots) {
      s.x.forEach((x, i) => {
        if (finite(x) && finite(s.y[i])) ctx.fillRect(X(x) - 1.5, Y(s.y[i]) - 1.5, 3, 3);
      });
      continue;
    }
    ctx.beginPath();
    let pen = false;
    s.x.forEach((x, i) => {
      const y = s.y[i];
      if (!finite(x) || !finite(y)) { pen = false; return; }
      if (pen) ctx.lineTo(X(x), Y(y)); else ctx.moveTo(X(x), Y(y));
      pen = true;
    });
    ctx.stroke();
  }
}

function report(el, fn) {
  el.classList.remove("err");
  try {
    fn();
  } catch (e) {
    el.textContent = String(e);
    el.classList.add("err");
  }
}

function runSimulation() {
  report($("sim-out"), () => {
    const res = JSON.parse(simulate($("sim-eos").value, num("sim-lambda"), num("sim-a0"),
      num("sim-adot0"), num("sim-rho0"), num("sim-span")));
    const q = $("sim-quantity").value;
    const s = res.series;
    const y = q === "rho" ? s.rho.map(Math.log10) : s[q];
    const r = res.report;
    $("sim-out").textContent = `${r.composite}   K = ${r.K.toPrecision(4)}   ` +
      `past: ${r.past.evidence}, future: ${r.future.evidence}`;
    plot($("sim-canvas"), [{ x: s.t, y }], { xlabel: "t", ylabel: q === "rho" ? "log10 ρ" : q });
  });
}

const CASE_COLORS = {
  "Case0_0": "#1f5fbf", "Case0_1": "#bf5f1f", "Case1_0": "#2a9d4b",
  "Case1_1": "#8e44ad", "Case2": "#c0392b",
};

function runScan() {
  report($("scan-out"), () => {
    const rows = JSON.parse(dust_scan(num("scan-lo"), num("scan-hi"), Math.round(num("scan-n")),
      $("scan-expanding").checked));
    const groups = new Map();
    for (const r of rows) {
      const key = `${r.case} ${r.scenario}`;
      if (!groups.has(key)) groups.set(key, { x: [], y: [], color: CASE_COLORS[r.case], dots: true });
      // Height separates the branches; the roots are drawn as lines below.
      groups.get(key).x.push(r.alpha);
      groups.get(key).y.push(r.branch === "low" ? 0.2 : 3.8);
    }
    const roots = rows.filter((r) => r.branch === "low" && r.xi1 !== null);
    const series = [...groups.values(),
      { x: roots.map((r) => r.alpha), y: roots.map((r) => r.xi1), color: "#777" },
      { x: roots.map((r) => r.alpha), y: roots.map((r) => r.xi2), color: "#777" }];
    $("scan-out").textContent = [...groups.keys()].join("  |  ");
    plot($("scan-canvas"), series, { xlabel: "α", ylabel: "ξ roots; dots = branch scenario" });
  });
}

function runEos() {
  report($("eos-out"), () => {
    const c = JSON.parse(eos_curve($("eos-spec").value, num("eos-decades"), 400));
    const lx = c.rho.map(Math.log10);
    $("eos-out").textContent = `P/ρ at top: ${c.w[c.w.length - 1].toPrecision(5)}   ` +
      `max dP/dρ: ${Math.max(...c.sound_speed2).toPrecision(5)}`;
    plot($("eos-canvas"), [
      { x: lx, y: c.w, color: "#1f5fbf" },
      { x: lx, y: c.sound_speed2, color: "#c0392b" },
    ], { xlabel: "log10 ρ", ylabel: "blue P/ρ, red dP/dρ" });
  });
}

await init();
$("sim-run").addEventListener("click", runSimulation);
$("scan-run").addEventListener("click", runScan);
$("eos-run").addEventListener("click", runEos);
runSimulation();
runScan();
runEos();
