"""Low-weight codeword search and decoding-set assembly.

The searcher is a randomized information-set scan: draw a random column
permutation, row-reduce the generator onto that information set, and
enumerate every combination of at most `w_enum` systematic rows. A
codeword is found by a restart whenever its support meets the chosen
information set in at most `w_enum` positions, and each find is expanded
to its full sigma-orbit for free, so yields converge quickly for the
short codes. Orbits are deduplicated by their canonical member (the
lexicographically smallest bit string under the cycle-major order).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping, Sequence

import numpy as np

from .codes import BlockWord, CodeModel
from .gf2 import pack_rows, rank_words

_COMBO_CACHE: dict[tuple[int, int], np.ndarray] = {}


def _combo_indices(k: int, size: int) -> np.ndarray:
    key = (k, size)
    if key not in _COMBO_CACHE:
        _COMBO_CACHE[key] = np.array(
            list(combinations(range(k), size)), dtype=np.int32
        ).reshape(-1, size)
    return _COMBO_CACHE[key]


def canonical_words(words01: np.ndarray, m: int) -> tuple[list[bytes], np.ndarray]:
    """Canonical orbit members for a batch of words.

    words01: (N, n) 0/1 array in cycle-major order. Returns (keys, reps):
    keys are packed byte strings usable for dedup, reps the matching
    canonical (N, n) rows. Packing is bit-big-endian, so byte order
    equals the lexicographic order of the bit strings.
    """
    N, n = words01.shape
    t1 = n // m
    blocks = words01.reshape(N, t1, m)
    rolled = np.stack([np.roll(blocks, tau, axis=2) for tau in range(m)])
    flat = rolled.reshape(m, N, n)
    packed = np.packbits(flat, axis=2)
    nb = packed.shape[2]
    nwords = (nb + 7) // 8
    padded = np.zeros((m, N, nwords * 8), dtype=np.uint8)
    padded[:, :, :nb] = packed
    keys64 = padded.view(np.dtype(">u8"))  # (m, N, nwords), big-endian

    # Lexicographic argmin over the orbit axis, word by word.
    alive = np.ones((m, N), dtype=bool)
    sentinel = np.uint64(0xFFFFFFFFFFFFFFFF)
    for w in range(nwords):
        col = keys64[:, :, w]
        masked = np.where(alive, col, sentinel)
        alive &= col == masked.min(axis=0)
    best = alive.argmax(axis=0)

    pick = np.arange(N)
    canon_packed = packed[best, pick]
    keys = [row.tobytes() for row in canon_packed]
    return keys, flat[best, pick]


def canonical_rep(v: BlockWord) -> BlockWord:
    """Lexicographically smallest sigma-shift of v (cycle-major bit order)."""
    arr = np.array([[b for b in map(int, v.to_string())]], dtype=np.uint8)
    _, reps = canonical_words(arr, v.m)
    return BlockWord.from_string("".join(map(str, reps[0])), v.m)


def orbit(v: BlockWord) -> list[BlockWord]:
    """Distinct sigma-images of v; length divides m."""
    seen = []
    w = v
    for _ in range(v.m):
        if w in seen:
            break
        seen.append(w)
        w = w.sigma(1)
    return seen


def orbit_size(v: BlockWord) -> int:
    return len(orbit(v))


class _Catalog:
    """Per-weight store of canonical class representatives."""

    def __init__(self, weights: Iterable[int]):
        self.classes: dict[int, dict[bytes, np.ndarray]] = {w: {} for w in weights}
        self.last_new_restart: dict[int, int] = {w: 0 for w in weights}

    def add(
        self, weight: int, keys: Sequence[bytes], reps: np.ndarray, restart: int
    ) -> int:
        table = self.classes[weight]
        fresh = 0
        for k, rep in zip(keys, reps):
            if k not in table:
                table[k] = rep
                fresh += 1
        if fresh:
            self.last_new_restart[weight] = restart
        return fresh


def _eliminate(mat: np.ndarray) -> np.ndarray:
    """In-place GF(2) row reduction of a 0/1 uint8 matrix; returns it."""
    k, n = mat.shape
    row = 0
    for col in range(n):
        sub = np.nonzero(mat[row:, col])[0]
        if sub.size == 0:
            continue
        p = row + sub[0]
        if p != row:
            mat[[row, p]] = mat[[p, row]]
        others = np.nonzero(mat[:, col])[0]
        others = others[others != row]
        if others.size:
            mat[others] ^= mat[row]
        row += 1
        if row == k:
            break
    return mat


class LowWeightSearcher:
    """Accumulates cyclically-different codewords of the target weights."""

    def __init__(
        self,
        code: CodeModel,
        weights: Iterable[int],
        seed: int = 0,
        w_enum: int | None = None,
        chunk: int = 1 << 17,
    ):
        self.code = code
        self.weights = tuple(sorted(set(weights)))
        if w_enum is None:
            w_enum = 4 if code.n // 2 <= 64 else 3
        self.w_enum = w_enum
        self.chunk = chunk
        self.rng = np.random.default_rng(seed)
        self.catalog = _Catalog(self.weights)
        self.restarts = 0
        k, n = code.G.num_rows, code.n
        self._g01 = np.array(
            [[(r >> j) & 1 for j in range(n)] for r in code.G.rows], dtype=np.uint8
        )
        self._combo_idx = [_combo_indices(k, p) for p in range(1, w_enum + 1)]

    def _scan_combos(self, packed: np.ndarray) -> dict[int, np.ndarray]:
        """XOR all row combinations and keep those hitting a target weight."""
        hits: dict[int, list[np.ndarray]] = {w: [] for w in self.weights}
        wanted = np.array(self.weights)
        for idx in self._combo_idx:
            for lo in range(0, idx.shape[0], self.chunk):
                part = idx[lo : lo + self.chunk]
                acc = packed[part[:, 0]].copy()
                for c in range(1, part.shape[1]):
                    acc ^= packed[part[:, c]]
                wt = np.bitwise_count(acc).sum(axis=1, dtype=np.int32)
                for w in self.weights:
                    sel = wt == w
                    if sel.any():
                        hits[w].append(acc[sel])
                del acc, wt
        return {
            w: np.concatenate(parts) if parts else np.empty((0, packed.shape[1]), np.uint8)
            for w, parts in hits.items()
        }

    def run(self, budget: int) -> None:
        """Execute `budget` information-set restarts."""
        n = self.code.n
        m = self.code.m
        for _ in range(budget):
            self.restarts += 1
            perm = self.rng.permutation(n)
            reduced = _eliminate(self._g01[:, perm].copy())
            packed = np.packbits(reduced, axis=1)
            for w, rows in self._scan_combos(packed).items():
                if rows.shape[0] == 0:
                    continue
                bits = np.unpackbits(rows, axis=1)[:, :n]
                orig = np.empty_like(bits)
                orig[:, perm] = bits
                keys, reps = canonical_words(orig, m)
                self.catalog.add(w, keys, reps, self.restarts)

    def run_until_stable(
        self,
        stall_factor: int = 20,
        max_restarts: int = 200_000,
        min_restarts: int = 40,
    ) -> None:
        """Restart until no weight has produced a new class for a while.

        A weight is considered complete once the searcher has gone
        stall_factor times the restart index of its last discovery
        without finding anything new (at least min_restarts in total).
        """
        while self.restarts < max_restarts:
            self.run(1)
            if self.restarts < min_restarts:
                continue
            done = all(
                self.restarts >= stall_factor * max(self.catalog.last_new_restart[w], 1)
                for w in self.weights
            )
            if done:
                return

    def classes(self, weight: int) -> list[BlockWord]:
        """Canonical representatives found so far, in canonical order."""
        table = self.catalog.classes[weight]
        out = []
        for key in sorted(table):
            bits = table[key]
            out.append(
                BlockWord.from_string("".join("1" if b else "0" for b in bits), self.code.m)
            )
        return out

    def add_words(self, words01: np.ndarray) -> dict[int, int]:
        """Fold externally found codewords (0/1 rows) into the catalog."""
        added = {}
        wt = words01.sum(axis=1)
        for w in self.weights:
            sel = wt == w
            if not sel.any():
                continue
            keys, reps = canonical_words(words01[sel].astype(np.uint8), self.code.m)
            added[w] = self.catalog.add(w, keys, reps, max(self.restarts, 1))
        return added


def search_low_weight(
    code: CodeModel,
    target_weight: int,
    budget: int,
    seed: int,
    w_enum: int | None = None,
) -> list[BlockWord]:
    """Canonical weight-`target_weight` classes found in `budget` restarts."""
    searcher = LowWeightSearcher(code, [target_weight], seed=seed, w_enum=w_enum)
    searcher.run(budget)
    return searcher.classes(target_weight)


def circulant_span_words(code: CodeModel, max_cell_dim: int = 18) -> np.ndarray:
    """All words of each single circulant cell span, as 0/1 rows.

    The generator's even-subcode cells are modules over the coefficient
    ring; enumerating each one exhaustively is cheap (at most 2^18 words)
    and surfaces structured low-weight codewords that information-set
    restarts rarely reach for the long code.
    """
    n = code.n
    chunks = []
    for start, count in code.y_cell_spans:
        if count > max_cell_dim:
            continue
        rows = [code.G.rows[start + i] for i in range(count)]
        span = np.zeros((1, n), dtype=np.uint8)
        for r in rows:
            row01 = np.array([(r >> j) & 1 for j in range(n)], dtype=np.uint8)
            span = np.concatenate([span, span ^ row01[None, :]])
        chunks.append(span[1:])
    if not chunks:
        return np.empty((0, n), dtype=np.uint8)
    return np.concatenate(chunks)


@dataclass(frozen=True)
class DecodingSet:
    """An ordered list of cyclically-different codewords with supports."""

    code_name: str
    m: int
    t1: int
    words: tuple[BlockWord, ...]
    seed: int = 0
    budget: int = 0
    _rank: list = field(default_factory=list, repr=False, compare=False)

    @property
    def weights(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for w in self.words:
            out[w.weight] = out.get(w.weight, 0) + 1
        return out

    @property
    def supports(self) -> tuple[tuple[tuple[int, ...], ...], ...]:
        return tuple(
            tuple(tuple(sorted(b.support())) for b in w.blocks) for w in self.words
        )

    def rank(self) -> int:
        """Rank of the full sigma-orbit expansion of the member words."""
        if not self._rank:
            rows = []
            for w in self.words:
                for o in orbit(w):
                    rows.append([int(c) for c in o.to_string()])
            packed = pack_rows(np.array(rows, dtype=np.uint8))
            self._rank.append(rank_words(packed, self.m * self.t1))
        return self._rank[0]

    def to_json_dict(self) -> dict:
        return {
            "code_name": self.code_name,
            "words": [w.to_string() for w in self.words],
            "seed": self.seed,
            "budget": self.budget,
            "weights": {str(k): v for k, v in sorted(self.weights.items())},
        }

    @classmethod
    def from_json_dict(cls, data: dict, code: CodeModel) -> "DecodingSet":
        if data["code_name"] != code.name:
            raise ValueError(
                f"decoding set belongs to code {data['code_name']!r}, not {code.name!r}"
            )
        words = []
        for s in data["words"]:
            if len(s) != code.n:
                raise ValueError(f"set word has length {len(s)}, expected {code.n}")
            w = code.word_from_string(s)
            if not code.is_member(w):
                raise ValueError("set contains a non-codeword")
            words.append(w)
        return cls(
            code.name,
            code.m,
            code.t1,
            tuple(words),
            seed=int(data.get("seed", 0)),
            budget=int(data.get("budget", 0)),
        )

    def save(self, path) -> None:
        with open(path, "w") as f:
            json.dump(self.to_json_dict(), f, indent=1)
            f.write("\n")

    @classmethod
    def load(cls, path, code: CodeModel) -> "DecodingSet":
        with open(path) as f:
            return cls.from_json_dict(json.load(f), code)


def assemble_set(
    code: CodeModel,
    classes: Sequence[BlockWord],
    sizes: Mapping[int, int] | None = None,
    seed: int = 0,
    budget: int = 0,
) -> DecodingSet:
    """Build a DecodingSet from class representatives.

    sizes maps weight -> how many classes of that weight to keep (a
    deterministic seeded sample); None keeps everything. Every word must
    be a codeword of `code`.
    """
    by_weight: dict[int, list[BlockWord]] = {}
    for w in classes:
        if not code.is_member(w):
            raise ValueError("assemble_set given a non-codeword")
        by_weight.setdefault(w.weight, []).append(w)
    for wt in by_weight:
        by_weight[wt].sort(key=lambda v: v.to_string())

    chosen: list[BlockWord] = []
    if sizes is None:
        for wt in sorted(by_weight):
            chosen.extend(by_weight[wt])
    else:
        rng = np.random.default_rng(seed)
        for wt in sorted(sizes):
            pool = by_weight.get(wt, [])
            want = sizes[wt]
            if want > len(pool):
                raise ValueError(
                    f"requested {want} classes of weight {wt}, only {len(pool)} available"
                )
            idx = sorted(rng.choice(len(pool), size=want, replace=False))
            chosen.extend(pool[i] for i in idx)

    return DecodingSet(code.name, code.m, code.t1, tuple(chosen), seed=seed, budget=budget)
