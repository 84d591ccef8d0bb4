"""Translate every coercive corpus term into the map system, re-check it
there, and write the per-term results to docs/translation_recheck.md."""
import argparse
import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "tests"))

from support.pipeline import coe_terms  # noqa: E402
from support.translation import recheck  # noqa: E402


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=ROOT / "docs" / "translation_recheck.md")
    args = ap.parse_args(argv)
    results = [recheck(c) for c in coe_terms()]
    passed = sum(r.ok for r in results)
    lines = [
        "# Re-checking translated terms in the map system",
        "",
        "Generated by `python3 scripts/translation_report.py`.  Each coercive corpus",
        "term (elaborated subsumptive programs and the explicit-coercion programs) is",
        "translated together with its context and type, then checked by the map",
        "checker.",
        "",
        f"Result: {passed}/{len(results)} re-check ({passed / len(results):.0%}).",
        "",
        "| term | result |",
        "| --- | --- |",
    ]
    lines += [f"| `{r.label}` | {'ok' if r.ok else r.error} |" for r in results]
    failed = [r for r in results if not r.ok]
    lines += ["", "## Failures", ""]
    lines += [f"- `{r.label}`: {r.error}" for r in failed] or ["None."]
    args.out.write_text("\n".join(lines) + "\n")
    print(f"{passed}/{len(results)} re-check; report written to {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
