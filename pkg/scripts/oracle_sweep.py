"""Compare the implementation against the independent rewriting oracle at a
chosen scale: weak-head steps on random terms, and conversion against
joinability on one exhaustive fragment.

    python3 scripts/oracle_sweep.py --seeds 20000 --fragment list --size 12
"""
import argparse
import sys
import time
from dataclasses import dataclass
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from fmltt.coe import CoeChecker  # noqa: E402
from fmltt.reduction import step  # noqa: E402
from fmltt.typing_map import MapChecker  # noqa: E402
from support.choose import RandomChooser  # noqa: E402
from support.fragment import (  # noqa: E402
    list_fingerprint, list_fragment, record_fingerprint, record_fragment,
)
from support.joinability import compare  # noqa: E402
from support.raw import raw_term  # noqa: E402
from support.redex import planted  # noqa: E402
from support.rewrite import wh_reducts  # noqa: E402


@dataclass
class SweepConfig:
    seeds: int = 5000
    scope: int = 3
    depth: int = 5
    fragment: str = "none"      # none, list, list-if, record
    size: int = 8
    cross_samples: int = 2000


def step_sweep(cfg: SweepConfig):
    fired = unsound = incomplete = 0
    for seed in range(cfg.seeds):
        for t in (raw_term(RandomChooser(seed), cfg.scope, cfg.depth), planted(RandomChooser(seed))):
            s, reducts = step(t), wh_reducts(t)
            if s is None:
                incomplete += bool(reducts)
            else:
                fired += 1
                unsound += s not in reducts
    print(f"step: {2 * cfg.seeds} terms, {fired} steps, {unsound} unsound, {incomplete} missed redexes")
    return unsound + incomplete


def fragment_sweep(cfg: SweepConfig):
    if cfg.fragment == "record":
        frag, chk, fp = record_fragment(cfg.size), CoeChecker(), record_fingerprint
    else:
        frag, chk = list_fragment(cfg.size, branch=cfg.fragment == "list-if"), MapChecker()
        fp = lambda t, _s: list_fingerprint(t)
    ctx = frag.ctx()
    t0 = time.perf_counter()
    rep = compare(frag, lambda a, b, ty: chk.conv_tm(ctx, a, b, ty), fp, cfg.cross_samples)
    print(f"{cfg.fragment}<={cfg.size}: {rep.terms} terms, {rep.classes} classes, "
          f"{rep.conv_calls} conv calls, {len(rep.disagreements)} disagreements, "
          f"{rep.overflow} overflows, {rep.split_classes} split classes, "
          f"{time.perf_counter() - t0:.1f}s")
    for d in rep.disagreements[:10]:
        print(f"  {d.kind} at {d.sort}: {d.left}  |  {d.right}")
    return len(rep.disagreements) + rep.overflow


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    defaults = SweepConfig()
    for name, value in vars(defaults).items():
        ap.add_argument(f"--{name.replace('_', '-')}", type=type(value), default=value)
    cfg = SweepConfig(**vars(ap.parse_args(argv)))
    bad = step_sweep(cfg)
    if cfg.fragment != "none":
        bad += fragment_sweep(cfg)
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
