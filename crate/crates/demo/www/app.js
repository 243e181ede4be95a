import init, { invariants, fibonacci, hadamard } from "./pkg/knotcore_demo.js";

const $ = (id) => document.getElementById(id);

function show(out, f) {
  out.classList.remove("err");
  try {
    out.textContent = render(JSON.parse(f()));
  } catch (e) {
    out.classList.add("err");
    out.textContent = String(e.message ?? e);
  }
}

const fmtC = ([re, im]) => `${re.toFixed(6)} ${im < 0 ? "-" : "+"} ${Math.abs(im).toFixed(6)}i`;

function render(v) {
  const lines = [];
  for (const [k, x] of Object.entries(v)) {
    if (k === "bracket_terms") continue;
    if (k === "matrix") {
      lines.push("matrix:");
      for (const row of x) lines.push("  " + row.map(fmtC).join("   "));
    } else if (Array.isArray(x) && x.length === 2 && typeof x[0] === "number") {
      lines.push(`${k}: ${fmtC(x)}`);
    } else if (typeof x === "object") {
      lines.push(`${k}: ${JSON.stringify(x)}`);
    } else {
      lines.push(`${k}: ${x}`);
    }
  }
  return lines.join("\n");
}

function bind(form, handler) {
  $(form).addEventListener("submit", (ev) => {
    ev.preventDefault();
    handler();
  });
}

await init();

bind("inv-form", () => show($("inv-out"), () => invariants($("inv-word").value)));
bind("fib-form", () => show($("fib-out"), () => fibonacci($("fib-word").value, Number($("fib-n").value))));
bind("had-form", () =>
  show($("had-out"), () =>
    hadamard(
      $("had-word").value,
      Number($("had-theta").value),
      Number($("had-shots").value),
      Number($("had-seed").value),
      Number($("had-index").value),
      $("had-im").checked,
    ),
  ),
);

for (const f of ["inv-form", "fib-form", "had-form"]) $(f).requestSubmit();
