"""Reference algebras and unary maps used throughout the tests and CLI examples.

The ``.pbck`` files in this directory are the golden copies; the helpers
below load them and provide the reference unary maps.
"""

from functools import lru_cache
from importlib import resources

import numpy as np

from ..core import FiniteAlgebra
from ..io import parse_text

NAMES = ("a2", "a6", "a4c", "a4l_printed", "a4l_row1_repaired", "a4l_corrected", "h2", "hg3", "hl3")


def path(name: str):
    return resources.files(__package__) / f"{name}.pbck"


@lru_cache(maxsize=None)
def _parsed(name: str):
    return parse_text(path(name).read_text(encoding="utf-8"), f"{name}.pbck")


def load(name: str) -> FiniteAlgebra:
    return _parsed(name).algebra()


def prod_table(name: str):
    return _parsed(name).prod


# Ten maps on the six-element algebra, images listed for 0 a b c d 1.
A6_MAPS = {
    1: "0 0 0 1 1 1",
    2: "0 a a 1 1 1",
    3: "0 a b c d 1",
    4: "0 b b 1 1 1",
    5: "0 d c c d 1",
    6: "0 1 1 1 1 1",
    7: "a a a 1 1 1",
    8: "b b b 1 1 1",
    9: "d d c c d 1",
    10: "1 1 1 1 1 1",
}

# Four maps on the commutative BCK-algebra, images for a b c 1.
A4C_MAPS = {
    1: "a a c 1",
    2: "a b c 1",
    3: "b b c 1",
    4: "1 1 1 1",
}

# Type I state on the linear example that is not a state-morphism; images for 0 a b 1.
A4L_MAP = "a a 1 1"


def image(A: FiniteAlgebra, row: str) -> np.ndarray:
    return np.array(A.indices(row.split()), dtype=np.int64)


def a6_map(i: int) -> np.ndarray:
    return image(load("a6"), A6_MAPS[i])


def a4c_map(i: int) -> np.ndarray:
    return image(load("a4c"), A4C_MAPS[i])
