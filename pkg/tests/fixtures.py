"""Hardcoded reference data shared by the test modules."""
import numpy as np

# Weight labels multiplying alpha_kl (rows, k-major) in omega_{mu nu} (columns, mu-major),
# for operators ordered I, D, C: the reference coefficient table, entered by hand.
TABLE = [
    "11 12 13 21 22 23 31 32 33",
    "12 11 12 22 21 22 32 31 32",
    "13 13 11 23 23 21 33 33 31",
    "21 22 23 11 12 13 21 22 23",
    "22 21 22 12 11 12 22 21 22",
    "23 23 21 13 13 11 23 23 21",
    "31 32 33 31 32 33 11 12 13",
    "32 31 32 32 31 32 12 11 12",
    "33 33 31 33 33 31 13 13 11",
]


def fixture_coefficients(w: np.ndarray) -> np.ndarray:
    out = np.empty((9, 9))
    for r, line in enumerate(TABLE):
        for c, label in enumerate(line.split()):
            out[r, c] = w[int(label[0]) - 1, int(label[1]) - 1]
    return out
