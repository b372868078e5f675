import init, { maximal_partitions, maximal_rings, choose_two } from "./pkg/ringcode_web.js";

function bind(id, run) {
  const form = document.getElementById(id);
  const out = document.getElementById(`${id}-out`);
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const data = new FormData(form);
    try {
      out.textContent = run(data);
      out.className = "";
    } catch (err) {
      out.textContent = String(err.message ?? err);
      out.className = "error";
    }
  });
}

await init();
bind("partitions", (d) => maximal_partitions(Number(d.get("k"))));
bind("rings", (d) => maximal_rings(d.get("size")));
bind("choose-two", (d) => choose_two(Number(d.get("n")), d.get("ring")));
