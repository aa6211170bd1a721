"""Construction and structure of the built-in self-dual codes.

Each code is a binary [n, n/2] self-dual code with a coordinate
permutation sigma made of t1 disjoint cycles of odd length m and no
fixed points. Coordinates are laid out cycle-major: global coordinate
i*m + j is position j of cycle i, so sigma is a uniform rotation of
fixed-size slices and each slice identifies with F2[x]/(x^m - 1).

The generator matrix is assembled as X over Y: X spans the subcode
fixed by sigma (blocks constant 0 or all-ones), Y spans the subcode
whose restriction to every cycle has even weight, built from
right-circulant cells whose first rows are given below.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .gf2 import BitMatrix, bits_from_string, bits_to_string
from .ring import RingElement


class CodeValidationError(Exception):
    """A constructed or loaded code failed a structural invariant."""

    def __init__(self, name: str, failures: list[str]):
        self.code_name = name
        self.failures = failures
        super().__init__(
            f"code {name!r} failed validation:\n" + "\n".join(f"  - {f}" for f in failures)
        )


class BlockWord:
    """A length-n word split into t1 ring elements, one per cycle."""

    __slots__ = ("m", "blocks")

    def __init__(self, blocks: Sequence[RingElement]):
        blocks = tuple(blocks)
        if not blocks:
            raise ValueError("a block word needs at least one block")
        m = blocks[0].m
        if any(b.m != m for b in blocks):
            raise ValueError("blocks have mixed moduli")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "blocks", blocks)

    def __setattr__(self, name, value):
        raise AttributeError("BlockWord is immutable")

    @classmethod
    def from_int(cls, m: int, t1: int, bits: int) -> "BlockWord":
        mask = (1 << m) - 1
        return cls([RingElement(m, (bits >> (i * m)) & mask) for i in range(t1)])

    @classmethod
    def from_string(cls, text: str, m: int) -> "BlockWord":
        if len(text) % m:
            raise ValueError(f"word length {len(text)} is not a multiple of m={m}")
        return cls.from_int(m, len(text) // m, bits_from_string(text))

    @property
    def t1(self) -> int:
        return len(self.blocks)

    @property
    def n(self) -> int:
        return self.m * len(self.blocks)

    def to_int(self) -> int:
        bits = 0
        for i, b in enumerate(self.blocks):
            bits |= b.bits << (i * self.m)
        return bits

    def to_string(self) -> str:
        return bits_to_string(self.to_int(), self.n)

    @property
    def weight(self) -> int:
        return sum(b.weight for b in self.blocks)

    def sigma(self, power: int = 1) -> "BlockWord":
        """Image under sigma^power: every block rotated by the same amount."""
        return BlockWord([b.shift(power) for b in self.blocks])

    def __add__(self, other: "BlockWord") -> "BlockWord":
        if self.m != other.m or self.t1 != other.t1:
            raise ValueError("shape mismatch")
        return BlockWord([a + b for a, b in zip(self.blocks, other.blocks)])

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BlockWord)
            and self.m == other.m
            and self.blocks == other.blocks
        )

    def __hash__(self) -> int:
        return hash((self.m, self.blocks))

    def __repr__(self) -> str:
        return f"BlockWord(m={self.m}, t1={self.t1}, weight={self.weight})"


def sigma_apply(v: BlockWord, power: int) -> BlockWord:
    return v.sigma(power)


def block_inner(u: BlockWord, v: BlockWord) -> RingElement:
    """Sum over cycles of u_i(x) * v_i(x^-1) mod (x^m - 1)."""
    if u.m != v.m or u.t1 != v.t1:
        raise ValueError("shape mismatch")
    acc = RingElement.zero(u.m)
    for ub, vb in zip(u.blocks, v.blocks):
        acc = acc + ub.mul(vb.reciprocal())
    return acc


def pi_project(v: BlockWord) -> tuple[int, ...]:
    """One bit per cycle for words fixed by sigma (blocks 0 or all-ones)."""
    ones = (1 << v.m) - 1
    out = []
    for i, b in enumerate(v.blocks):
        if b.bits == 0:
            out.append(0)
        elif b.bits == ones:
            out.append(1)
        else:
            raise ValueError(
                f"block {i} is neither zero nor all-ones; word is not sigma-fixed"
            )
    return tuple(out)


def extremal_bound(n: int) -> int:
    """Upper bound on the minimum distance of a binary self-dual code."""
    if n <= 0 or n % 2:
        raise ValueError("length must be even and positive")
    if n % 24 == 22:
        return 4 * (n // 24) + 6
    return 4 * (n // 24) + 4


def expand_circulant(first_row: RingElement, num_rows: int) -> BitMatrix:
    """Right-circulant block: row k = x^k * first_row, k = 0..num_rows-1."""
    if not 1 <= num_rows <= first_row.m:
        raise ValueError(f"num_rows must be in 1..{first_row.m}, got {num_rows}")
    return BitMatrix(
        [first_row.shift(k).bits for k in range(num_rows)], first_row.m
    )


# -- built-in code data -------------------------------------------------------
#
# Code "D": [90,45,14], m=15, t1=6. The even-weight cells are products of
# the base polynomials below (powers taken in F2[x]/(x^15 - 1)).

_D_POLYS = {
    "e1": (1, 2, 3, 4, 6, 7, 8, 9, 11, 12, 13, 14),
    "e2": (3, 6, 7, 9, 11, 12, 13, 14),
    "e3": (1, 2, 3, 4, 6, 8, 9, 12),
    "e4": (1, 2, 4, 5, 7, 8, 10, 11, 13, 14),
    "mu1": (0, 1, 5, 6, 10, 11),
    "mu2": (0, 1, 5, 8, 9, 11, 13, 14),
    "mu3": (0, 1, 2, 4, 6, 7, 10, 14),
    "mu4": (0, 1, 3, 4, 6, 7, 9, 10, 12, 13),
}

_D_X = ((1, 0, 1, 0, 0, 0), (0, 1, 0, 1, 0, 0), (0, 0, 0, 0, 1, 1))

_D_CELL_ROWS = (
    (4, (("e1", 1), None, None, None, ("mu1", 1), ("mu1", 2))),
    (4, (None, ("e1", 1), None, ("mu1", 1), ("mu1", 1), ("mu1", 12))),
    (4, (None, None, ("e1", 1), ("mu1", 2), ("mu1", 12), ("mu1", 8))),
    (4, (("e2", 1), None, None, None, ("mu2", 1), ("mu2", 1))),
    (4, (None, ("e2", 1), None, ("mu2", 1), ("mu2", 1), None)),
    (4, (None, None, ("e2", 1), ("mu2", 1), ("mu2", 1), ("mu2", 1))),
    (4, (None, ("mu3", 1), ("mu3", 1), ("e3", 1), None, None)),
    (4, (("mu3", 1), ("mu3", 1), ("mu3", 1), None, ("e3", 1), None)),
    (4, (("mu3", 1), None, ("mu3", 1), None, None, ("e3", 1))),
    (2, (("e4", 1), None, None, None, None, ("mu4", 1))),
    (2, (None, ("e4", 1), None, None, ("mu4", 2), None)),
    (2, (None, None, ("e4", 1), ("mu4", 2), None, None)),
)

# Code "T": [78,39,14], m=39, t1=2. First rows of the circulant cells,
# written as coefficient strings (character j = coefficient of x^j).

_T_X = ((1, 1),)

_T_CELL_ROWS = (
    (12, ("000100110100101101110101100111110111111",
          "110011010100011111000101000011010111100")),
    (12, ("100111101011000010100011111000101011001",
          "011111101111100110101110110100101100100")),
    (12, ("011010000010001101000001000110100000100",
          "011111111111101111111111110111111111111")),
    (2,  ("011011011011011011011011011011011011011",
          "011011011011011011011011011011011011011")),
)

# Code "B": [266,133,36], m=133, t1=2.

_B_X = ((1, 1),)

_B_CELL_ROWS = (
    (3, ("11101001110100111010011101001110100111010011101001110100"
         "11101001110100111010011101001110100111010011101001110100"
         "111010011101001110100",
         "00000000000000000000000000000000000000000000000000000000"
         "00000000000000000000000000000000000000000000000000000000"
         "000000000000000000000")),
    (3, ("00000000000000000000000000000000000000000000000000000000"
         "00000000000000000000000000000000000000000000000000000000"
         "000000000000000000000",
         "10010111001011100101110010111001011100101110010111001011"
         "10010111001011100101110010111001011100101110010111001011"
         "100101110010111001011")),
    (18, ("00010011010111100110011110101001001110010111111111011001"
          "10010111000010111101011000101011111110101110001111000011"
          "100100110010101000000",
          "00000000000000000000000000000000000000000000000000000000"
          "00000000000000000000000000000000000000000000000000000000"
          "000000000000000000000")),
    (18, ("10011101110011011101010101010010100111101000010000010010"
          "00011110011001001010100101100101110110100110111010110010"
          "010000101110010000011",
          "00000001010100110010011100001111000111010111111101010001"
          "10101111010000111010011001101111111110100111001001010111"
          "100110011110101100100")),
    (18, ("01111011100011111100010011101110101101000010000011101100"
          "10111001110110100111010101001100000101001011100111110100"
          "110010111101001110100",
          "11100000100111010000100100110101110110010110111010011010"
          "01010100100110011110000100100000100001011110010100101010"
          "101011101100111011100")),
    (18, ("10011101110011011101010101010010100111101000010000010010"
          "00011110011001001010100101100101110110100110111010110010"
          "010000101110010000011",
          "00010111001011110100110010111110011101001010000011001010"
          "10111001011011100111010011011100000100001011010111011100"
          "100011111100011101111")),
    (18, ("01101101101000101000110001011001110100001110010101100111"
          "10000111101101100000010110111001011101100110110001101011"
          "110101010011111011011",
          "10001101110001010010011101010100000010000010101001111111"
          "01011011101100101011001100000011111110010111101111110101"
          "011000011101011010111")),
    (18, ("11110101101011100001101010111111011110100111111100000011"
          "00110101001101110110101111111001010100000100000010101011"
          "100100101000111011000",
          "01101101111100101010111101011000110110011011101001110110"
          "10000001101101111000011110011010100111000010111001101000"
          "110001010001011011011")),
    (18, ("01111111111111111110111111111111111111011111111111111111"
          "10111111111111111111011111111111111111101111111111111111"
          "110111111111111111111",
          "10011011100001011101001101110000101110100110111000010111"
          "01001101110000101110100110111000010111010011011100001011"
          "101001101110000101110")),
)

_CODE_PARAMS = {
    "D": dict(m=15, t1=6, claimed_d=14, x=_D_X),
    "T": dict(m=39, t1=2, claimed_d=14, x=_T_X),
    "B": dict(m=133, t1=2, claimed_d=36, x=_B_X),
}


def _d_cell_polys() -> list[tuple[int, list[RingElement]]]:
    base = {k: RingElement.from_exponents(15, v) for k, v in _D_POLYS.items()}
    out = []
    for shifts, entries in _D_CELL_ROWS:
        polys = []
        for entry in entries:
            if entry is None:
                polys.append(RingElement.zero(15))
            else:
                name, power = entry
                polys.append(base[name].pow(power))
        out.append((shifts, polys))
    return out


def _string_cell_polys(cell_rows, m: int) -> list[tuple[int, list[RingElement]]]:
    return [
        (shifts, [RingElement.from_string(s) for s in strings])
        for shifts, strings in cell_rows
    ]


def _cell_rows_for(name: str) -> list[tuple[int, list[RingElement]]]:
    if name == "D":
        return _d_cell_polys()
    if name == "T":
        return _string_cell_polys(_T_CELL_ROWS, 39)
    return _string_cell_polys(_B_CELL_ROWS, 133)


class CodeModel:
    """A validated code instance with its cycle structure.

    Rows of G are ordered X first (fixed-subcode generators), then the
    circulant expansions of the even-subcode cells.
    """

    __slots__ = ("name", "m", "t1", "n", "claimed_d", "G", "x_rows", "y_cell_spans")

    def __init__(
        self,
        name: str,
        m: int,
        t1: int,
        G: BitMatrix,
        claimed_d: int = 0,
        x_rows: int = 0,
        y_cell_spans: tuple[tuple[int, int], ...] = (),
        validate: bool = True,
    ):
        self.name = name
        self.m = m
        self.t1 = t1
        self.n = m * t1
        self.claimed_d = claimed_d
        self.G = G
        self.x_rows = x_rows
        self.y_cell_spans = y_cell_spans
        if G.n != self.n:
            raise CodeValidationError(name, [f"G has {G.n} columns, expected {self.n}"])
        if validate:
            self.validate()

    def __setattr__(self, name, value):
        if name in self.__slots__ and not hasattr(self, name):
            object.__setattr__(self, name, value)
        else:
            raise AttributeError("CodeModel is immutable")

    # -- construction ---------------------------------------------------------

    @classmethod
    def build(cls, name: str) -> "CodeModel":
        key = name.upper()
        if key not in _CODE_PARAMS:
            raise ValueError(f"unknown code {name!r}; choose one of D, T, B")
        params = _CODE_PARAMS[key]
        m, t1 = params["m"], params["t1"]
        ones = (1 << m) - 1

        rows: list[int] = []
        for xrow in params["x"]:
            bits = 0
            for i, v in enumerate(xrow):
                if v:
                    bits |= ones << (i * m)
            rows.append(bits)
        x_rows = len(rows)

        spans = []
        for shifts, polys in _cell_rows_for(key):
            spans.append((len(rows), shifts))
            for k in range(shifts):
                bits = 0
                for i, p in enumerate(polys):
                    bits |= p.shift(k).bits << (i * m)
                rows.append(bits)

        return cls(
            key,
            m,
            t1,
            BitMatrix(rows, m * t1),
            claimed_d=params["claimed_d"],
            x_rows=x_rows,
            y_cell_spans=tuple(spans),
        )

    # -- validation -----------------------------------------------------------

    def validate(self) -> None:
        """Check self-duality, rank and sigma-invariance; raise on failure."""
        failures = []
        k = self.G.num_rows
        if k != self.n // 2:
            failures.append(f"G has {k} rows, expected n/2 = {self.n // 2}")

        gram = self.G.gram()
        bad = [
            (i, j)
            for i in range(k)
            for j in range(i, k)
            if (gram.rows[i] >> j) & 1
        ]
        if bad:
            shown = ", ".join(map(str, bad[:20]))
            more = "" if len(bad) <= 20 else f" (+{len(bad) - 20} more)"
            failures.append(f"G*G^T is nonzero at row/col pairs {shown}{more}")

        rank = self.G.rank()
        if rank != self.n // 2:
            failures.append(f"rank(G) = {rank}, expected {self.n // 2}")

        if not bad and rank == self.n // 2:
            # Self-duality established, so G doubles as a parity check;
            # only then is the membership-based sigma test meaningful.
            for idx, row in enumerate(self.G.rows):
                image = self.word(row).sigma(1).to_int()
                if not self.G.is_member(image):
                    failures.append(f"sigma image of generator row {idx} left the code")

        if failures:
            raise CodeValidationError(self.name, failures)

    # -- word helpers ----------------------------------------------------------

    def word(self, bits: int) -> BlockWord:
        return BlockWord.from_int(self.m, self.t1, bits)

    def word_from_string(self, text: str) -> BlockWord:
        if len(text) != self.n:
            raise ValueError(f"expected {self.n} characters, got {len(text)}")
        return self.word(bits_from_string(text))

    def encode(self, message: int) -> BlockWord:
        return self.word(self.G.encode(message))

    def is_member(self, v: BlockWord | int) -> bool:
        bits = v.to_int() if isinstance(v, BlockWord) else v
        return self.G.is_member(bits)

    def fixed_subcode(self) -> BitMatrix:
        """Generators of the subcode fixed by sigma, found from G itself."""
        moved = BitMatrix(
            [self.word(r).sigma(1).to_int() ^ r for r in self.G.rows], self.n
        )
        combos = moved.left_nullspace()
        return BitMatrix([self.G.encode(c) for c in combos.rows], self.n)

    # -- serialization ----------------------------------------------------------

    def to_json_dict(self) -> dict:
        return {
            "name": self.name,
            "m": self.m,
            "t1": self.t1,
            "n": self.n,
            "generator_rows": self.G.to_strings(),
        }

    @classmethod
    def from_json_dict(cls, data: dict, validate: bool = True) -> "CodeModel":
        G = BitMatrix.from_strings(data["generator_rows"])
        claimed = _CODE_PARAMS.get(data["name"], {}).get("claimed_d", 0)
        return cls(
            data["name"],
            int(data["m"]),
            int(data["t1"]),
            G,
            claimed_d=claimed,
            validate=validate,
        )


def build_code(name: str) -> CodeModel:
    return CodeModel.build(name)
