# %% [markdown]
# # Command line, cache and SVG output
# Everything here is also available as `arithlimit <command> --config ...`.

# %%
import pathlib
import tempfile

from arithlimit import cli

CONFIGS = pathlib.Path(__file__).resolve().parents[1] / "src" / "arithlimit" / "configs"
cfg = str(CONFIGS / "mixed.cfg")

cli.main(["classify", "--config", cfg])

# %%
with tempfile.TemporaryDirectory() as tmp:
    cache = f"{tmp}/cache"
    cli.main(["enumerate", "--config", cfg, "--max-word-length", "6", "--cache", cache])
    cli.main(["plimit", "--config", cfg, "--max-word-length", "6", "--cache", cache,
              "--out", f"{tmp}/out"])
    rows = pathlib.Path(tmp, "out", "plimit.csv").read_text().splitlines()
    print(len(rows) - 1, "directions; first rows:")
    print("\n".join(rows[:4]))

# %%
out = pathlib.Path(tempfile.gettempdir()) / "arithlimit_demo"
cli.main(["render", "--config", str(CONFIGS / "full_boundary.cfg"), "--max-word-length", "7",
          "--out", str(out)])
print("wrote", out / "render.svg")

# %%
status = cli.main(["verify", "--config", cfg, "--max-word-length", "5"])
print("verify exit status", status)
