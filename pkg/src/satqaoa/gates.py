"""Single-qubit gate matrices.

Only ``H`` (initial superposition) and ``RX`` (mixer, ``exp(-i beta X) ==
RX(2 beta)``) sit on the algorithm path; the rest are kept for reference and
for building dense test operators.
"""
import numpy as np

I = np.eye(2, dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)

KET0 = np.array([1, 0], dtype=complex)
KET1 = np.array([0, 1], dtype=complex)


def rx(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)


def ry(theta: float) -> np.ndarray:
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def rz(theta: float) -> np.ndarray:
    return np.array([[np.exp(-0.5j * theta), 0], [0, np.exp(0.5j * theta)]], dtype=complex)


GATES = {"I": I, "H": H, "X": X, "Y": Y, "Z": Z}
ROTATIONS = {"RX": rx, "RY": ry, "RZ": rz}


def on_qubit(gate: np.ndarray, k: int, n: int) -> np.ndarray:
    """Dense ``2**n`` operator acting as ``gate`` on qubit ``k`` (bit k of the index)."""
    out = np.ones((1, 1), dtype=complex)
    # kron puts its first factor on the most significant bit
    for q in reversed(range(n)):
        out = np.kron(out, gate if q == k else I)
    return out
