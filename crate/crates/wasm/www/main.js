import init, { recover_instance, sweep, bound_curve } from "../pkg/hhf_wasm.js";

const num = (id) => Number(document.getElementById(id).value);
const COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

function plot(canvas, series, { logX = false, logY = false, xLabel = "", yLabel = "" } = {}) {
  const ctx = canvas.getContext("2d");
  const W = canvas.width, H = canvas.height, pad = 45;
  ctx.clearRect(0, 0, W, H);
  const fx = logX ? Math.log10 : (v) => v;
  const fy = logY ? (v) => Math.log10(Math.max(v, 1e-12)) : (v) => v;
  const pts = series.flatMap((s) => s.points);
  const xs = pts.map((p) => fx(p[0])), ys = pts.map((p) => fy(p[1]));
  let [x0, x1, y0, y1] = [Math.min(...xs), Math.max(...xs), Math.min(...ys), Math.max(...ys)];
  if (x0 === x1) x1 = x0 + 1;
  if (y0 === y1) y1 = y0 + 1;
  const sx = (v) => pad + ((fx(v) - x0) / (x1 - x0)) * (W - 2 * pad);
  const sy = (v) => H - pad + ((fy(v) - y0) / (y1 - y0)) * (2 * pad - H);

  ctx.strokeStyle = "#999";
  ctx.strokeRect(pad, pad / 2, W - 2 * pad, H - 1.5 * pad);
  ctx.fillStyle = "#444";
  ctx.font = "12px sans-serif";
  ctx.fillText(xLabel, W / 2 - 20, H - 8);
  ctx.fillText(yLabel, 4, 14);
  const fmt = (v, log) => (log ? Number((10 ** v).toPrecision(2)) : Number(v.toPrecision(3))).toString();
  ctx.fillText(fmt(x0, logX), pad, H - pad + 14);
  ctx.fillText(fmt(x1, logX), W - pad - 30, H - pad + 14);
  ctx.fillText(fmt(y0, logY), 2, H - pad);
  ctx.fillText(fmt(y1, logY), 2, pad / 2 + 10);

  series.forEach((s, i) => {
    ctx.strokeStyle = ctx.fillStyle = s.color ?? COLORS[i % COLORS.length];
    ctx.beginPath();
    s.points.forEach(([x, y], j) => (j ? ctx.lineTo(sx(x), sy(y)) : ctx.moveTo(sx(x), sy(y))));
    if (s.dots) {
      s.points.forEach(([x, y]) => ctx.fillRect(sx(x) - 2, sy(y) - 2, 4, 4));
    } else {
      ctx.stroke();
    }
    if (s.label) ctx.fillText(s.label, W - pad - 90, pad + 14 * (i + 1));
  });
}

function guard(out, f) {
  out.classList.remove("err");
  try {
    f();
  } catch (e) {
    out.classList.add("err");
    out.textContent = String(e.message ?? e);
  }
}

function runRecover() {
  const out = document.getElementById("r-out");
  guard(out, () => {
    const r = JSON.parse(recover_instance(num("r-n"), num("r-p"), num("r-theta"), num("r-c"), num("r-seed")));
    plot(
      document.getElementById("r-plot"),
      [
        { label: "u", points: r.u.map((v, i) => [i, v]) },
        { label: "u hat", dots: true, points: r.u_hat.map((v, i) => [i, v]) },
      ],
      { xLabel: "index", yLabel: "entry" },
    );
    out.textContent =
      `c = ${r.c.toFixed(4)}   c^2 hat = ${r.c_squared_hat.toFixed(4)}   theta hat = ${r.theta_hat.toFixed(4)}\n` +
      `max error (up to sign) = ${r.linf_error.toExponential(3)}   X bit error rate = ${r.x_bit_error_rate.toExponential(3)}`;
  });
}

function runSweep() {
  const out = document.getElementById("s-out");
  out.textContent = "running...";
  setTimeout(() => guard(out, () => {
    const thetas = [0.1, 0.4];
    const v = JSON.parse(sweep(num("s-n"), new Float64Array(thetas), num("s-pmax"), num("s-trials"), num("s-seed")));
    plot(
      document.getElementById("s-plot"),
      v.curves.map((rows, i) => ({ label: `theta = ${thetas[i]}`, points: rows.map((r) => [r.p, r.mean_linf_error]) })),
      { logX: true, logY: true, xLabel: "p", yLabel: "mean max error" },
    );
    out.textContent = v.curves
      .map((rows, i) => `theta ${thetas[i]}: ` + rows.map((r) => r.mean_linf_error.toFixed(3)).join(" "))
      .join("\n");
  }), 0);
}

function runBound() {
  const out = document.getElementById("b-out");
  guard(out, () => {
    const v = JSON.parse(bound_curve(num("b-n"), num("b-theta"), num("b-c"), num("b-t"), num("b-pmax"), 80));
    plot(
      document.getElementById("b-plot"),
      [{ label: "bound", points: v.p_values.map((p, i) => [p, v.bound[i]]) }],
      { logX: true, logY: true, xLabel: "p", yLabel: "failure bound" },
    );
    out.textContent = `columns needed for failure probability 1/n: ${v.planned_columns}`;
  });
}

await init();
document.getElementById("r-go").onclick = runRecover;
document.getElementById("s-go").onclick = runSweep;
document.getElementById("b-go").onclick = runBound;
runRecover();
runBound();
