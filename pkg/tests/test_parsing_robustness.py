"""Mutational fuzz over the text formats: parsers must fail cleanly.

Any malformed input should surface as a library error (ParseError or a
sibling), never as a bare KeyError/IndexError/AttributeError from the guts.
"""

import random

import pytest

from posetval import parse_poset, parse_valuation, parse_map
from posetval.chain import parse_quantile
from posetval.errors import Error

VALID_POSET = """element bot
element a
element b
element top
bottom bot
cover bot a
cover bot b
cover a top
cover b top
"""

VALID_VALUATION = "a 1/2^1\nb 1/2^1\n"

VALID_QUANTILE = "break 1/2^2 c0\nbreak 1/2^1 c1\nbreak 1 c2\n"

VALID_MAP = """layers 2
layer 0
map - bot
layer 1
map 0 bot
map 1 top
"""

C3 = "element c0\nelement c1\nelement c2\nbottom c0\ncover c0 c1\ncover c1 c2\n"


def mutate(rng, text):
    lines = text.splitlines()
    op = rng.randrange(6)
    if op == 0 and lines:
        lines.pop(rng.randrange(len(lines)))
    elif op == 1 and lines:
        lines.insert(rng.randrange(len(lines) + 1),
                     rng.choice(["bogus", "element", "cover a", "map 01",
                                 "break x y z w", "layer -1", "a b c",
                                 "a -1/2^1", "a 1/3", "%", "\x00",
                                 "a 1/2^99999999999999999999",  # shift bomb
                                 "layers 0", "layer 9999999"]))
    elif op == 2 and lines:
        i = rng.randrange(len(lines))
        lines[i] = lines[i] + " trailing"
    elif op == 3 and lines:
        i = rng.randrange(len(lines))
        lines[i] = lines[i].replace("1", "x")
    elif op == 4 and lines:
        i = rng.randrange(len(lines))
        j = rng.randrange(len(lines))
        lines[i], lines[j] = lines[j], lines[i]
    else:
        lines = lines + lines  # duplicate everything
    return "\n".join(lines) + "\n"


@pytest.mark.parametrize("seed", range(5))
def test_fuzz_parsers_fail_cleanly(seed):
    rng = random.Random(seed)
    m4 = parse_poset(VALID_POSET)
    c3 = parse_poset(C3)
    for _ in range(300):
        for text, parse in (
                (VALID_POSET, parse_poset),
                (VALID_VALUATION, lambda t: parse_valuation(t, m4)),
                (VALID_QUANTILE, lambda t: parse_quantile(t, c3)),
                (VALID_MAP, lambda t: parse_map(t, m4))):
            mutated = mutate(rng, text)
            try:
                parse(mutated)
            except Error:
                pass  # clean library failure (or a benign still-valid text)
