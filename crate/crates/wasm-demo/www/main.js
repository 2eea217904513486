import init, { compile_demo, sweep_demo, fidelity_curve } from "./pkg/tilt_wasm_demo.js";

const $ = (id) => document.getElementById(id);
const num = (id) => Number($(id).value);

function params() {
  return [$("family").value, num("qubits"), num("head"), num("msl"), num("eps"), BigInt(num("seed"))];
}

function showError(e) {
  $("stats").innerHTML = `<span class="err">${String(e.message ?? e)}</span>`;
}

// Tape timeline: one row per step, head window shaded, gates as arcs.
function drawTape(view) {
  const cv = $("tape"), g = cv.getContext("2d");
  const rows = view.steps.length;
  cv.height = Math.min(2000, Math.max(200, rows * 14 + 30));
  g.clearRect(0, 0, cv.width, cv.height);
  const dx = (cv.width - 40) / view.tape_ions, dy = (cv.height - 20) / rows;
  const x = (ion) => 30 + (ion + 0.5) * dx;
  view.steps.forEach((s, r) => {
    const y = 10 + r * dy;
    g.fillStyle = "#e8f0ff";
    g.fillRect(30 + s.position * dx, y, view.head_size * dx, dy - 2);
    g.fillStyle = "#999";
    g.font = "10px monospace";
    g.fillText(String(r), 2, y + dy * 0.7);
    const arc = (pair, colour) => {
      g.strokeStyle = colour;
      g.beginPath();
      g.moveTo(x(pair[0]), y + dy - 3);
      g.quadraticCurveTo((x(pair[0]) + x(pair[1])) / 2, y, x(pair[1]), y + dy - 3);
      g.stroke();
    };
    s.pairs.forEach((p) => arc(p, "#2a5db0"));
    s.swaps.forEach((p) => arc(p, "#d2452f"));
  });
}

function drawBars(rows) {
  const cv = $("bars"), g = cv.getContext("2d");
  g.clearRect(0, 0, cv.width, cv.height);
  const top = Math.max(...rows.map((r) => r.success_rate), 1e-300);
  const w = (cv.width - 40) / rows.length;
  g.font = "11px monospace";
  rows.forEach((r, i) => {
    const h = (cv.height - 40) * (r.success_rate / top);
    g.fillStyle = r.best ? "#d2452f" : "#2a5db0";
    g.fillRect(30 + i * w + 4, cv.height - 20 - h, w - 8, h);
    g.fillStyle = "#222";
    g.fillText(`${r.max_swap_len}`, 30 + i * w + w / 2 - 4, cv.height - 6);
    g.fillText(r.success_rate.toExponential(2), 30 + i * w + 6, cv.height - 24 - h);
  });
}

function drawCurve() {
  const dists = [1, 3, 7, 15];
  const series = JSON.parse(fidelity_curve(new Uint32Array(dists), num("maxm"), num("chain"), num("ceps"), num("gamma")));
  const cv = $("curve"), g = cv.getContext("2d");
  g.clearRect(0, 0, cv.width, cv.height);
  const colours = ["#2a5db0", "#3a9a52", "#d98c1f", "#d2452f"];
  const m = num("maxm");
  const px = (i) => 40 + (i / m) * (cv.width - 60);
  const py = (f) => 10 + (1 - f) * (cv.height - 40);
  g.strokeStyle = "#bbb";
  g.strokeRect(40, 10, cv.width - 60, cv.height - 40);
  g.font = "11px monospace";
  g.fillStyle = "#222";
  g.fillText("1", 28, 14);
  g.fillText("0", 28, cv.height - 28);
  g.fillText(`moves → ${m}`, cv.width - 110, cv.height - 12);
  series.forEach(([d, fs], k) => {
    g.strokeStyle = colours[k];
    g.beginPath();
    fs.forEach((f, i) => (i ? g.lineTo(px(i), py(f)) : g.moveTo(px(i), py(f))));
    g.stroke();
    g.fillStyle = colours[k];
    g.fillText(`d=${d}`, 50 + k * 60, cv.height - 12);
  });
}

await init();

$("run").onclick = () => {
  try {
    const v = JSON.parse(compile_demo(...params()));
    $("stats").textContent =
      `swaps ${v.swaps} (opposing ${v.opposing_swaps})   moves ${v.moves} (${v.move_distance_slots} slots)   ` +
      `max swap len ${v.max_swap_len}   success ${v.success_rate.toExponential(3)}   t ${(v.t_exec_s * 1e3).toFixed(2)} ms`;
    drawTape(v);
  } catch (e) { showError(e); }
};

$("sweep").onclick = () => {
  try {
    const [family, qubits, head, , eps, seed] = params();
    drawBars(JSON.parse(sweep_demo(family, qubits, head, eps, seed)));
  } catch (e) { showError(e); }
};

for (const id of ["chain", "ceps", "gamma", "maxm"]) $(id).oninput = drawCurve;

$("run").onclick();
drawCurve();
