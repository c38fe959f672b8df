import init, { effective_potential, solve_channel, bound_state_table } from "./pkg/k0spectrum_web.js";

const S_LO = 0.05;
const S_HI = 10;
const SAMPLES = 300;
const COLORS = ["#c0392b", "#2471a3", "#239b56"];

const $ = (id) => document.getElementById(id);

function coupling() {
  return parseFloat($("coupling").value);
}

function channel() {
  return parseInt($("channel").value, 10);
}

// Draws polylines (xs, ys) into a canvas with fixed y limits and a zero line.
function plot(canvas, curves, ymin, ymax) {
  const ctx = canvas.getContext("2d");
  const w = canvas.width;
  const h = canvas.height;
  ctx.clearRect(0, 0, w, h);
  const xmin = Math.min(...curves.map((c) => c.xs[0]));
  const xmax = Math.max(...curves.map((c) => c.xs[c.xs.length - 1]));
  const px = (x) => ((x - xmin) / (xmax - xmin)) * w;
  const py = (y) => h - ((Math.min(Math.max(y, ymin), ymax) - ymin) / (ymax - ymin)) * h;

  ctx.strokeStyle = "#999";
  ctx.beginPath();
  ctx.moveTo(0, py(0));
  ctx.lineTo(w, py(0));
  ctx.stroke();

  for (const c of curves) {
    ctx.strokeStyle = c.color;
    ctx.beginPath();
    c.xs.forEach((x, i) => (i ? ctx.lineTo(px(x), py(c.ys[i])) : ctx.moveTo(px(x), py(c.ys[i]))));
    ctx.stroke();
  }
}

function drawPotential() {
  const c = coupling();
  $("coupling-value").textContent = c.toFixed(1);
  const step = (S_HI - S_LO) / (SAMPLES - 1);
  const xs = Array.from({ length: SAMPLES }, (_, i) => S_LO + i * step);
  const curves = [0, 1, 2].map((m) => ({
    xs,
    ys: Array.from(effective_potential(m, c, S_LO, S_HI, SAMPLES)),
    color: COLORS[m],
  }));
  plot($("potential"), curves, -Math.max(1, c), 2);
}

function solve() {
  const m = channel();
  try {
    const ch = solve_channel(m, coupling(), 20);
    const eps = Array.from(ch.eigenvalues);
    $("energies").textContent = eps.length
      ? `eps = ${eps.map((e) => e.toPrecision(10)).join(", ")}${ch.shallow ? " (shallow state)" : ""}`
      : "no bound states in this channel";
    const canvas = $("wavefunction");
    if (eps.length) {
      const ys = Array.from(ch.ground_phi);
      const peak = Math.max(...ys.map(Math.abs));
      plot(canvas, [{ xs: Array.from(ch.ground_s), ys, color: COLORS[m] }], -0.1 * peak, 1.1 * peak);
    } else {
      canvas.getContext("2d").clearRect(0, 0, canvas.width, canvas.height);
    }
  } catch (e) {
    $("energies").textContent = `error: ${e}`;
  }
}

function table() {
  try {
    $("table-out").textContent = bound_state_table(coupling(), 3);
  } catch (e) {
    $("table-out").textContent = `error: ${e}`;
  }
}

await init();
$("coupling").addEventListener("input", drawPotential);
$("solve").addEventListener("click", solve);
$("table").addEventListener("click", table);
drawPotential();
