import init, { mckayGraph, characterTable, verifyLocal } from "./pkg/mckay_web.js";

const TYPES = [
  "A1", "A2", "A3", "A4", "A5", "A6", "A7", "A8", "A9", "A10",
  "D4", "D5", "D6", "D7", "D8", "D9", "D10",
  "E6", "E7", "E8",
];

const $ = (id) => document.getElementById(id);
const SVG = "http://www.w3.org/2000/svg";

function el(tag, attrs = {}, text) {
  const node = tag === "svg" || ["circle", "line", "rect", "text", "g"].includes(tag)
    ? document.createElementNS(SVG, tag)
    : document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  if (text !== undefined) node.textContent = text;
  return node;
}

function current() {
  return { label: $("type").value, seed: Number($("seed").value) >>> 0 };
}

function status(text) {
  $("status").textContent = text;
}

function timed(name, fn) {
  const { label, seed } = current();
  status(`computing ${name} for ${label}…`);
  // let the status paint before the synchronous wasm call
  setTimeout(() => {
    const t0 = performance.now();
    try {
      fn(label, seed);
      status(`${name} for ${label} in ${(performance.now() - t0).toFixed(0)} ms`);
    } catch (e) {
      status(`error: ${e}`);
    }
  }, 10);
}

// Spring layout; the graphs have at most 9 vertices so a few hundred rounds is plenty.
function layout(n, edges, width, height) {
  const pos = Array.from({ length: n }, (_, i) => {
    const a = (2 * Math.PI * i) / n;
    return [Math.cos(a), Math.sin(a)];
  });
  for (let step = 0; step < 400; step++) {
    const force = pos.map(() => [0, 0]);
    for (let i = 0; i < n; i++) {
      for (let j = 0; j < n; j++) {
        if (i === j) continue;
        const dx = pos[i][0] - pos[j][0];
        const dy = pos[i][1] - pos[j][1];
        const d2 = dx * dx + dy * dy + 1e-6;
        force[i][0] += (0.05 * dx) / d2;
        force[i][1] += (0.05 * dy) / d2;
      }
    }
    for (const [i, j] of edges) {
      const dx = pos[j][0] - pos[i][0];
      const dy = pos[j][1] - pos[i][1];
      const d = Math.hypot(dx, dy);
      const pull = 0.1 * (d - 0.5);
      force[i][0] += (pull * dx) / d;
      force[i][1] += (pull * dy) / d;
      force[j][0] -= (pull * dx) / d;
      force[j][1] -= (pull * dy) / d;
    }
    pos.forEach((p, i) => {
      p[0] += force[i][0];
      p[1] += force[i][1];
    });
  }
  const xs = pos.map((p) => p[0]);
  const ys = pos.map((p) => p[1]);
  const [x0, x1, y0, y1] = [Math.min(...xs), Math.max(...xs), Math.min(...ys), Math.max(...ys)];
  const pad = 40;
  const sx = (width - 2 * pad) / Math.max(x1 - x0, 1e-6);
  const sy = (height - 2 * pad) / Math.max(y1 - y0, 1e-6);
  const s = Math.min(sx, sy);
  return pos.map(([x, y]) => [
    pad + (x - x0) * s + (width - 2 * pad - (x1 - x0) * s) / 2,
    pad + (y - y0) * s + (height - 2 * pad - (y1 - y0) * s) / 2,
  ]);
}

function drawGraph(label, seed) {
  const g = JSON.parse(mckayGraph(label, seed));
  const svg = $("graph");
  svg.replaceChildren();
  const n = g.dims.length;
  const edges = [];
  for (let i = 0; i < n; i++) {
    for (let j = i + 1; j < n; j++) {
      for (let k = 0; k < g.adjacency[i][j]; k++) edges.push([i, j, k, g.adjacency[i][j]]);
    }
  }
  const pos = layout(n, edges.map(([i, j]) => [i, j]), +svg.getAttribute("width"), +svg.getAttribute("height"));
  for (const [i, j, k, m] of edges) {
    // parallel edges (affine A1) get spread apart
    const off = (k - (m - 1) / 2) * 8;
    svg.append(el("line", {
      x1: pos[i][0], y1: pos[i][1] + off, x2: pos[j][0], y2: pos[j][1] + off,
      stroke: "#555", "stroke-width": 2,
    }));
  }
  g.dims.forEach((d, i) => {
    const [x, y] = pos[i];
    const trivial = i === g.trivial;
    svg.append(trivial
      ? el("rect", { x: x - 14, y: y - 14, width: 28, height: 28, fill: "#fde7c2", stroke: "#a66" })
      : el("circle", { cx: x, cy: y, r: 14, fill: "#dbe8fb", stroke: "#557" }));
    svg.append(el("text", { x, y: y + 5, "text-anchor": "middle", "font-size": 14 }, String(d)));
  });
  $("graph-title").textContent =
    `${g.group} (order ${g.order}): affine ${g.affine}, finite ${g.finite}`;
  $("graph-section").hidden = false;
}

function matrixTable(colHeads, rowHeads, rows) {
  const table = el("table");
  const head = el("tr");
  head.append(el("th"));
  colHeads.forEach((c) => head.append(el("th", {}, String(c))));
  table.append(head);
  rows.forEach((row, i) => {
    const tr = el("tr");
    tr.append(el("th", {}, String(rowHeads[i])));
    row.forEach((x) => tr.append(el("td", {}, x)));
    table.append(tr);
  });
  return table;
}

function drawTable(label, seed) {
  const t = JSON.parse(characterTable(label, seed));
  const cols = t.class_orders.map((o, j) => `${o}·${t.class_sizes[j]}`);
  const rows = t.degrees.map((d, i) => `χ${i} (${d})`);
  $("table").replaceChildren(matrixTable(cols, rows, t.rows));
  $("table-title").textContent =
    `${t.group}: ${t.rows.length} irreducible characters, order ${t.order}` +
    ` (columns: element order · class size)`;
  $("table-section").hidden = false;
}

function drawVerify(label, seed) {
  const v = JSON.parse(verifyLocal(label, seed));
  const list = $("checks");
  list.replaceChildren();
  for (const c of v.checks) {
    const li = el("li");
    li.append(el("span", { class: c.pass ? "pass" : "fail" }, c.pass ? "pass" : "FAIL"));
    li.append(` ${c.name}`);
    if (c.witness) li.append(` (witness ${c.witness})`);
    if (c.detail) li.append(`: ${c.detail}`);
    list.append(li);
  }
  const d = v.diagnostic;
  const li = el("li");
  li.append(el("span", { class: d.pass ? "pass" : "fail" }, d.pass ? "pass" : "FAIL"));
  li.append(` floating point diagnostic: max error ${d.max_error.toExponential(2)} over ${d.identities} identities`);
  list.append(li);
  $("phi").replaceChildren(matrixTable(v.cols, v.rows, v.phi));
  $("verify-title").textContent = `${v.group}: ${v.pass ? "all checks pass" : "verification failed"}`;
  $("verify-section").hidden = false;
}

await init();
for (const t of TYPES) $("type").append(el("option", { value: t }, t));
$("type").value = "E6";
$("graph-btn").onclick = () => timed("McKay graph", drawGraph);
$("table-btn").onclick = () => timed("character table", drawTable);
$("verify-btn").onclick = () => timed("verification", drawVerify);
status("ready");
