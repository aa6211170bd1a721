"""GF(2) matrix algebra over bit-packed integer rows.

Rows are Python ints (bit j = column j), which keeps row operations
word-parallel for the matrix sizes in play (n <= 266). Bulk rank of
large codeword stacks goes through the numpy helpers at the bottom.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np


def bits_from_string(text: str) -> int:
    """'0'/'1' string -> int mask, character j = bit j."""
    if set(text) - {"0", "1"}:
        raise ValueError("expected a string of 0s and 1s")
    bits = 0
    for j, ch in enumerate(text):
        if ch == "1":
            bits |= 1 << j
    return bits


def bits_to_string(bits: int, n: int) -> str:
    return "".join("1" if (bits >> j) & 1 else "0" for j in range(n))


class BitMatrix:
    """A matrix over GF(2) with bit-packed rows of equal length n."""

    __slots__ = ("rows", "n")

    def __init__(self, rows: Iterable[int], n: int):
        self.rows = list(rows)
        self.n = n
        mask = (1 << n) - 1
        for r in self.rows:
            if r & ~mask:
                raise ValueError(f"row has bits beyond column count {n}")

    @classmethod
    def from_strings(cls, rows: Iterable[str]) -> "BitMatrix":
        rows = list(rows)
        if not rows:
            raise ValueError("empty matrix needs an explicit column count")
        n = len(rows[0])
        if any(len(r) != n for r in rows):
            raise ValueError("rows have unequal lengths")
        return cls([bits_from_string(r) for r in rows], n)

    def to_strings(self) -> list[str]:
        return [bits_to_string(r, self.n) for r in self.rows]

    @property
    def num_rows(self) -> int:
        return len(self.rows)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitMatrix)
            and self.n == other.n
            and self.rows == other.rows
        )

    def __repr__(self) -> str:
        return f"BitMatrix({self.num_rows}x{self.n})"

    def copy(self) -> "BitMatrix":
        return BitMatrix(self.rows, self.n)

    def rref(self) -> tuple["BitMatrix", int]:
        """Reduced row-echelon form and rank."""
        work = self.rows[:]
        nrows = len(work)
        pivot_row = 0
        for col in range(self.n):
            bit = 1 << col
            pivot = None
            for r in range(pivot_row, nrows):
                if work[r] & bit:
                    pivot = r
                    break
            if pivot is None:
                continue
            work[pivot_row], work[pivot] = work[pivot], work[pivot_row]
            for r in range(nrows):
                if r != pivot_row and (work[r] & bit):
                    work[r] ^= work[pivot_row]
            pivot_row += 1
            if pivot_row == nrows:
                break
        return BitMatrix(work, self.n), pivot_row

    def rank(self) -> int:
        return self.rref()[1]

    def encode(self, message: int) -> int:
        """GF(2) combination of rows selected by the bits of message."""
        if message >> len(self.rows):
            raise ValueError(
                f"message has more than {len(self.rows)} bits"
            )
        word = 0
        msg = message
        while msg:
            lsb = msg & -msg
            word ^= self.rows[lsb.bit_length() - 1]
            msg ^= lsb
        return word

    def syndrome(self, v: int) -> int:
        """G * v^T as a bit mask (bit i = parity of row i AND v)."""
        if v >> self.n:
            raise ValueError(f"vector has more than {self.n} bits")
        syn = 0
        for i, row in enumerate(self.rows):
            syn |= ((row & v).bit_count() & 1) << i
        return syn

    def is_member(self, v: int) -> bool:
        """True iff v is orthogonal to every row.

        For a self-dual code the generator doubles as a parity-check
        matrix, so this is the codeword membership test.
        """
        if v >> self.n:
            raise ValueError(f"vector has more than {self.n} bits")
        return all((row & v).bit_count() & 1 == 0 for row in self.rows)

    def gram(self) -> "BitMatrix":
        """G * G^T over GF(2)."""
        k = len(self.rows)
        out = [0] * k
        for i in range(k):
            ri = self.rows[i]
            for j in range(i, k):
                if (ri & self.rows[j]).bit_count() & 1:
                    out[i] |= 1 << j
                    out[j] |= 1 << i
        return BitMatrix(out, k)

    def transpose(self) -> "BitMatrix":
        out = [0] * self.n
        for i, row in enumerate(self.rows):
            while row:
                lsb = row & -row
                out[lsb.bit_length() - 1] |= 1 << i
                row ^= lsb
        return BitMatrix(out, len(self.rows))

    def stack(self, other: "BitMatrix") -> "BitMatrix":
        if self.n != other.n:
            raise ValueError("column counts differ")
        return BitMatrix(self.rows + other.rows, self.n)

    def left_nullspace(self) -> "BitMatrix":
        """Basis of {v : v * M = 0}, as rows of length num_rows."""
        k = len(self.rows)
        # Augment each row with an identity tag and reduce; rows whose
        # matrix part vanishes give the left-nullspace combinations.
        aug = [self.rows[i] | (1 << (self.n + i)) for i in range(k)]
        reduced, _ = BitMatrix(aug, self.n + k).rref()
        mask = (1 << self.n) - 1
        basis = [row >> self.n for row in reduced.rows if row and not (row & mask)]
        return BitMatrix(basis, k)


# -- numpy bulk helpers -------------------------------------------------------


def pack_rows(bits01: np.ndarray) -> np.ndarray:
    """(N, n) 0/1 array -> (N, W) uint64, bit j of word j//64 = column j."""
    n = bits01.shape[1]
    nwords = (n + 63) // 64
    padded = np.zeros((bits01.shape[0], nwords * 64), dtype=np.uint8)
    padded[:, :n] = bits01
    # Within each 64-bit word, column j maps to bit j (little-endian).
    chunks = padded.reshape(bits01.shape[0], nwords, 64).astype(np.uint64)
    weights = (np.uint64(1) << np.arange(64, dtype=np.uint64))[None, None, :]
    return (chunks * weights).sum(axis=2, dtype=np.uint64)


def unpack_rows(words: np.ndarray, n: int) -> np.ndarray:
    """(N, W) uint64 -> (N, n) 0/1 uint8; inverse of pack_rows."""
    nwords = words.shape[1]
    shifts = np.arange(64, dtype=np.uint64)[None, None, :]
    bits = (words[:, :, None] >> shifts) & np.uint64(1)
    return bits.reshape(words.shape[0], nwords * 64)[:, :n].astype(np.uint8)


def ints_to_words(values: Sequence[int], n: int) -> np.ndarray:
    """Python int masks -> (N, W) uint64 rows."""
    nwords = (n + 63) // 64
    out = np.zeros((len(values), nwords), dtype=np.uint64)
    for i, v in enumerate(values):
        for w in range(nwords):
            out[i, w] = (v >> (64 * w)) & 0xFFFFFFFFFFFFFFFF
    return out


def words_to_int(row: np.ndarray) -> int:
    v = 0
    for w in range(row.shape[0] - 1, -1, -1):
        v = (v << 64) | int(row[w])
    return v


def rank_words(words: np.ndarray, n: int) -> int:
    """Rank over GF(2) of packed uint64 rows (word-parallel elimination)."""
    work = np.unique(words.copy(), axis=0)
    rank = 0
    for col in range(n):
        w, b = divmod(col, 64)
        have = np.nonzero((work[rank:, w] >> np.uint64(b)) & np.uint64(1))[0]
        if have.size == 0:
            continue
        p = rank + have[0]
        if p != rank:
            work[[rank, p]] = work[[p, rank]]
        hit = np.nonzero((work[:, w] >> np.uint64(b)) & np.uint64(1))[0]
        hit = hit[hit != rank]
        work[hit] ^= work[rank]
        rank += 1
        if rank == work.shape[0]:
            break
    return rank
