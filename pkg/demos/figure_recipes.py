"""The bundled experiment presets and how to run them.

Every preset pins its dimensions, SNR grid, selector, and seed, so the CSV
it emits is reproducible byte for byte. This demo lists them and runs one
at reduced trial count through the same code path as the command line.

Run:  python demos/figure_recipes.py
"""

import io
from contextlib import redirect_stdout

from antsel.cli import main
from antsel.recipes import FIGURE_RECIPES

print("available presets:")
for name, recipe in sorted(FIGURE_RECIPES.items(), key=lambda kv: int(kv[0][3:])):
    print(f"  {name:<6} ({recipe.subcommand:<8}) {recipe.description}")

print()
print("running fig5 at 30 trials (flags override recipe values):")
buf = io.StringIO()
with redirect_stdout(buf):
    code = main(["sweep", "--recipe", "fig5", "--trials", "30"])
assert code == 0
lines = buf.getvalue().splitlines()
head = [ln for ln in lines if ln.startswith("#")]
body = [ln for ln in lines if not ln.startswith("#")]
print("\n".join(head))
print("\n".join(body[:6]))
print(f"... {len(body) - 1} data rows total")
