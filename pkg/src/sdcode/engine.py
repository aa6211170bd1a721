"""Vectorized decoder used by the simulation harness.

Mirrors `decoder.decode` exactly (same tallies, same tie-breaking, same
failure taxonomy) but keeps everything in packed numpy arrays:

- coefficient j of the product w for set word b is the parity of
  r AND sigma^j(b), so all L*m coefficients come from one masked
  popcount against a precomputed orbit matrix;
- the tally table is a support-indicator matrix product followed by a
  wrapped-diagonal gather, both exact in float32 (counts < 2^24);
- a bit flip updates the w coefficients incrementally by XOR-ing a
  rolled reciprocal-support pattern instead of recomputing.
"""

from __future__ import annotations

from typing import Optional

import numpy as np

from .codes import CodeModel
from .decoder import (
    FAILURE_CYCLE,
    FAILURE_ITERATION_CAP,
    FAILURE_STALL,
    SUCCESS,
)
from .gf2 import pack_rows
from .search import DecodingSet


class DecoderEngine:
    """Precomputed state for decoding many words against one set."""

    def __init__(
        self,
        code: CodeModel,
        dset: DecodingSet,
        flip_rule: str = "single",
        max_iters: Optional[int] = None,
    ):
        if dset.code_name != code.name:
            raise ValueError("decoding set belongs to a different code")
        if flip_rule not in ("single", "all_tied"):
            raise ValueError(f"unknown flip rule {flip_rule!r}")
        self.code = code
        self.flip_rule = flip_rule
        self.max_iters = code.n if max_iters is None else max_iters
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")

        n, m, t1 = code.n, code.m, code.t1
        self.n, self.m, self.t1 = n, m, t1
        L = len(dset.words)
        self.L = L

        g01 = np.array(
            [[(r >> j) & 1 for j in range(n)] for r in code.G.rows], dtype=np.uint8
        )
        self.g_packed = pack_rows(g01)

        words01 = np.zeros((L, t1, m), dtype=np.uint8)
        for l, word in enumerate(dset.words):
            for s, block in enumerate(word.blocks):
                for i in block.support():
                    words01[l, s, i] = 1

        # Orbit matrix: row l*m + j holds sigma^j(word l).
        orbits = np.stack([np.roll(words01, j, axis=2) for j in range(m)], axis=1)
        self.orbit_packed = pack_rows(orbits.reshape(L * m, n))

        # Support indicators, transposed for the tally matmul.
        self.support_t = (
            words01.transpose(1, 2, 0).reshape(t1 * m, L).astype(np.float32)
        )

        # rev[l, s, i] = coefficient of x^(-i) in block s of word l.
        idx = (-np.arange(m)) % m
        self.rev = words01[:, :, idx].copy()

        # diag_idx[i, j] = (j - i) mod m, the wrapped diagonal gather.
        j_grid, i_grid = np.meshgrid(np.arange(m), np.arange(m))
        self.diag_idx = (j_grid - i_grid) % m

    # -- packing helpers -------------------------------------------------------

    def pack(self, bits: int) -> np.ndarray:
        nwords = self.g_packed.shape[1]
        out = np.zeros(nwords, dtype=np.uint64)
        for w in range(nwords):
            out[w] = (bits >> (64 * w)) & 0xFFFFFFFFFFFFFFFF
        return out

    def unpack(self, words: np.ndarray) -> int:
        bits = 0
        for w in range(words.shape[0] - 1, -1, -1):
            bits = (bits << 64) | int(words[w])
        return bits

    # -- decode ----------------------------------------------------------------

    def _is_member(self, r_words: np.ndarray) -> bool:
        par = np.bitwise_count(self.g_packed & r_words[None, :]).sum(axis=1)
        return not (par & 1).any()

    def _w_table(self, r_words: np.ndarray) -> np.ndarray:
        par = np.bitwise_count(self.orbit_packed & r_words[None, :]).sum(axis=1)
        return (par & 1).astype(np.uint8).reshape(self.L, self.m)

    def _phi(self, w_table: np.ndarray) -> np.ndarray:
        m, t1 = self.m, self.t1
        prod = self.support_t @ w_table.astype(np.float32)
        cube = prod.reshape(t1, m, m)
        gathered = np.take_along_axis(cube, self.diag_idx[None, :, :], axis=2)
        return np.rint(gathered.sum(axis=1)).astype(np.int64)

    def decode(self, r_words: np.ndarray) -> tuple[str, Optional[np.ndarray], int, list]:
        """Decode packed received words; returns (status, words, iters, flips)."""
        r = r_words.copy()
        m = self.m
        w_table = self._w_table(r)
        visited = {r.tobytes()}
        flips: list[tuple[int, int]] = []
        iterations = 0
        while True:
            if self._is_member(r):
                return SUCCESS, r, iterations, flips
            phi = self._phi(w_table)
            flat = phi.reshape(-1)
            top = int(flat.max()) if flat.size else 0
            if top == 0:
                return FAILURE_STALL, None, iterations, flips
            if self.flip_rule == "single":
                positions = [int(flat.argmax())]
            else:
                positions = [int(p) for p in np.flatnonzero(flat == top)]
            for pos in positions:
                s, j = divmod(pos, m)
                q = s * m + j
                r[q >> 6] ^= np.uint64(1) << np.uint64(q & 63)
                w_table ^= np.roll(self.rev[:, s, :], j, axis=1)
                flips.append((s, j))
            iterations += 1
            key = r.tobytes()
            if key in visited:
                return FAILURE_CYCLE, None, iterations, flips
            visited.add(key)
            if iterations >= self.max_iters and not self._is_member(r):
                return FAILURE_ITERATION_CAP, None, iterations, flips

    def decode_bits(self, bits: int) -> tuple[str, Optional[int], int, list]:
        status, words, iterations, flips = self.decode(self.pack(bits))
        out = self.unpack(words) if words is not None else None
        return status, out, iterations, flips
