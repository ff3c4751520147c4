"""Default expression corpus and corpus-file loading."""

from __future__ import annotations

import random
from importlib import resources

from .setexpr import Lit, Mult, PrimesIdx, SetExpr, Union, Up, parse_expr

from . import arith


def load_corpus(path: str | None = None) -> list[SetExpr]:
    """Expressions from a corpus file (one per line, '#' comments).

    Without a path, the bundled default corpus is used.
    """
    if path is None:
        text = resources.files("divfilters.data").joinpath("corpus.txt").read_text()
    else:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    exprs = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        exprs.append(parse_expr(line))
    return exprs


def default_filters() -> list:
    """Documented filter corpus used by the harness and acceptance suite."""
    from .filters import make_filter, principal
    from .setexpr import PrimesIdx, ProdSet

    return [
        principal(1),
        principal(2),
        principal(6),
        principal(30),
        make_filter([Mult(2)]),
        make_filter([Mult(6)]),
        make_filter([Mult(12)]),
        make_filter([Mult(2), Mult(3)]),
        make_filter([Up(Lit(frozenset({4, 9})))]),
        make_filter([Up(PrimesIdx(1, 2))]),
        make_filter([Up(PrimesIdx(2, 2))]),
        make_filter([Up(ProdSet((PrimesIdx(1, 2), PrimesIdx(2, 2))))]),
    ]


def random_expressions(seed: int, count: int) -> list[SetExpr]:
    """Seeded corpus augmentation: simple random union/up/mult shapes."""
    rng = random.Random(seed)
    out: list[SetExpr] = []
    primes = arith.primes_upto(100)
    for _ in range(count):
        shape = rng.randrange(3)
        if shape == 0:
            out.append(Mult(rng.randint(2, 30)))
        elif shape == 1:
            chosen = frozenset(rng.sample(primes, rng.randint(1, 4)))
            out.append(Up(Lit(chosen)))
        else:
            out.append(Union(Mult(rng.randint(2, 12)), Mult(rng.randint(2, 12))))
    return out
