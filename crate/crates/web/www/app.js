import init, { classify_partition, eval_form, quiver_svg, knit_svg } from "./pkg/staircase_web.js";

const $ = (id) => document.getElementById(id);

function classify() {
  const text = $("lambda").value;
  const r = JSON.parse(classify_partition(text));
  if (r.error) {
    $("summary").textContent = r.error;
    $("quiver").innerHTML = "";
    $("checks").textContent = "";
    return;
  }
  const m = r.measures;
  $("summary").innerHTML =
    `(${r.potency}) has n=${m.size}, l=${m.length}, s=${m.steps}; type <span class="type">${r.type}</span>, ` +
    `orbit type ${r.orbit_type}; transpose (${r.transpose}).`;
  $("quiver").innerHTML = quiver_svg(text, "");
  $("checks").textContent = r.checks
    .map((c) => `${c.criterion}: expected ${c.expected}, observed ${c.observed}`)
    .join("\n") + `\nconsistent: ${r.consistent}`;
}

function evaluate() {
  const text = $("lambda").value;
  const rows = $("vector").value;
  const r = JSON.parse(eval_form(text, rows));
  $("value").textContent = r.error ? r.error : `q = ${r.q}`;
  $("labelled").innerHTML = r.error ? "" : quiver_svg(text, rows);
}

function component() {
  $("component").innerHTML = knit_svg($("lambda").value, Number($("limit").value) || 0);
}

await init();
$("classify").addEventListener("click", classify);
$("eval").addEventListener("click", evaluate);
$("knit").addEventListener("click", component);
$("lambda").addEventListener("keydown", (e) => { if (e.key === "Enter") classify(); });
classify();
