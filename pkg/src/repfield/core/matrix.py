"""Dense matrices tagged with the ring they live over."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from ..errors import PreconditionError, RingMismatchError
from .zmod import ModulusRing, howell_rows, is_howell, log_span_size


@dataclass(frozen=True)
class Mat:
    """Immutable row-major matrix over a :class:`ModulusRing` or finite field.

    Entries are stored as canonical residues (ints in ``[0, size)``).
    """

    ring: Any
    rows: int
    cols: int
    entries: tuple[int, ...]

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise PreconditionError(
                f"{len(self.entries)} entries for a {self.rows}x{self.cols} matrix"
            )

    @classmethod
    def from_rows(cls, ring, rows: Iterable[Sequence[int]], cols: int | None = None) -> "Mat":
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise PreconditionError("column count is required for an empty matrix")
            cols = len(rows[0])
        for r in rows:
            if len(r) != cols:
                raise PreconditionError("ragged matrix rows")
        entries = tuple(ring.reduce(x) for r in rows for x in r)
        return cls(ring, len(rows), cols, entries)

    @classmethod
    def identity(cls, ring, n: int) -> "Mat":
        return cls(ring, n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, ring, rows: int, cols: int) -> "Mat":
        return cls(ring, rows, cols, (0,) * (rows * cols))

    @classmethod
    def unit(cls, ring, n: int, i: int, j: int, scale: int = 1) -> "Mat":
        """``scale`` times the matrix unit E_ij of size n."""
        e = [0] * (n * n)
        e[i * n + j] = ring.reduce(scale)
        return cls(ring, n, n, tuple(e))

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_rows(self) -> tuple[tuple[int, ...], ...]:
        return tuple(self.row(i) for i in range(self.rows))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def _check(self, other: "Mat"):
        if self.ring != other.ring:
            raise RingMismatchError(f"matrices over {self.ring} and {other.ring}")

    def __add__(self, other: "Mat") -> "Mat":
        self._check(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise RingMismatchError("shape mismatch in matrix sum")
        R = self.ring
        return Mat(R, self.rows, self.cols, tuple(R.add(a, b) for a, b in zip(self.entries, other.entries)))

    def __matmul__(self, other: "Mat") -> "Mat":
        self._check(other)
        if self.cols != other.rows:
            raise RingMismatchError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        R = self.ring
        a, b = self.to_rows(), other.to_rows()
        bt = list(zip(*b))
        out = []
        if isinstance(R, ModulusRing):
            N = R.modulus
            for r in a:
                for c in bt:
                    out.append(sum(x * y for x, y in zip(r, c)) % N)
        else:
            for r in a:
                for c in bt:
                    s = 0
                    for x, y in zip(r, c):
                        if x and y:
                            s = R.add(s, R.mul(x, y))
                    out.append(s)
        return Mat(R, self.rows, other.cols, tuple(out))

    def scale(self, c: int) -> "Mat":
        R = self.ring
        return Mat(R, self.rows, self.cols, tuple(R.mul(c, x) for x in self.entries))

    def transpose(self) -> "Mat":
        return Mat.from_rows(self.ring, zip(*self.to_rows()), self.rows)

    def flatten(self) -> tuple[int, ...]:
        return self.entries

    def change_ring(self, ring) -> "Mat":
        """Reinterpret the integer entries over another ring (lift or reduce)."""
        return Mat(ring, self.rows, self.cols, tuple(ring.reduce(x) for x in self.entries))

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in self.row(i)) for i in range(self.rows))
        return f"Mat[{self.ring}]({body})"


def howell_form(rows: Mat) -> Mat:
    """Canonical Howell generating matrix of the row span of ``rows``.

    Two inputs with the same row span give identical outputs; zero rows are
    dropped, so the zero module comes back as a ``0 x n`` matrix.
    """
    R = rows.ring
    if not isinstance(R, ModulusRing):
        raise RingMismatchError(f"howell_form needs a matrix over Z/p^M, got {R}")
    h = howell_rows(rows.to_rows(), R.p, R.M, rows.cols)
    return Mat(R, len(h), rows.cols, tuple(x for r in h for x in r))


def span_size(h: Mat) -> int:
    """Number of elements in the row span of a Howell-form matrix."""
    R = h.ring
    if not isinstance(R, ModulusRing):
        raise RingMismatchError(f"span_size needs a matrix over Z/p^M, got {R}")
    rows = h.to_rows()
    if not is_howell(rows, R.p, R.M):
        raise PreconditionError("span_size expects a matrix in Howell form")
    return R.p ** log_span_size(rows, R.p, R.M)
