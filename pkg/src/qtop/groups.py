"""Finite groups as explicit multiplication tables.

Groups are ingested as tables (CSV: row i, col j = index of the product)
or as permutation generators, in which case the table is built by
closure.  Associativity, identity, and inverses are checked on
construction; the exponent e(G) is cached.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import lcm


class GroupTableError(ValueError):
    """Malformed multiplication table or unknown builtin group."""


@dataclass(frozen=True)
class FiniteGroupTable:
    name: str
    table: tuple[tuple[int, ...], ...]
    identity: int
    inverse: tuple[int, ...]
    exponent: int

    @property
    def order(self) -> int:
        return len(self.table)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inverse[a], -k
        acc = self.identity
        while k:
            if k & 1:
                acc = self.table[acc][a]
            a = self.table[a][a]
            k >>= 1
        return acc

    def element_order(self, a: int) -> int:
        acc, k = a, 1
        while acc != self.identity:
            acc = self.table[acc][a]
            k += 1
        return k

    def conjugate(self, g: int, a: int) -> int:
        """g a g^{-1}."""
        return self.table[self.table[g][a]][self.inverse[g]]

    @staticmethod
    def from_table(name: str, table: list[list[int]]) -> "FiniteGroupTable":
        n = len(table)
        if any(len(row) != n for row in table):
            raise GroupTableError("table is not square")
        if any(not (0 <= x < n) for row in table for x in row):
            raise GroupTableError("table entries out of range")
        identity = None
        for e in range(n):
            if all(table[e][a] == a and table[a][e] == a for a in range(n)):
                identity = e
                break
        if identity is None:
            raise GroupTableError("no identity element")
        inverse = [None] * n
        for a in range(n):
            for b in range(n):
                if table[a][b] == identity and table[b][a] == identity:
                    inverse[a] = b
                    break
            if inverse[a] is None:
                raise GroupTableError(f"element {a} has no inverse")
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    if table[table[a][b]][c] != table[a][table[b][c]]:
                        raise GroupTableError("table is not associative")
        tab = tuple(tuple(row) for row in table)
        g = FiniteGroupTable(name, tab, identity, tuple(inverse), 1)
        exp = 1
        for a in range(n):
            exp = lcm(exp, g.element_order(a))
        object.__setattr__(g, "exponent", exp)
        return g

    @staticmethod
    def from_permutations(name: str, gens: list[tuple[int, ...]]) -> "FiniteGroupTable":
        """Closure of permutation generators (tuples mapping i -> perm[i])."""
        if not gens:
            raise GroupTableError("need at least one permutation")
        deg = len(gens[0])
        ident = tuple(range(deg))

        def compose(a, b):
            return tuple(a[b[i]] for i in range(deg))

        elements = [ident]
        index = {ident: 0}
        queue = [ident]
        while queue:
            cur = queue.pop()
            for g in gens:
                nxt = compose(g, cur)
                if nxt not in index:
                    index[nxt] = len(elements)
                    elements.append(nxt)
                    queue.append(nxt)
        table = [
            [index[compose(a, b)] for b in elements]
            for a in elements
        ]
        return FiniteGroupTable.from_table(name, table)

    @staticmethod
    def from_csv(name: str, text: str) -> "FiniteGroupTable":
        rows = []
        for line in text.strip().splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            rows.append([int(tok) for tok in line.replace(",", " ").split()])
        return FiniteGroupTable.from_table(name, rows)

    def to_csv(self) -> str:
        return "\n".join(",".join(str(x) for x in row) for row in self.table)


@lru_cache(maxsize=None)
def builtin_group(name: str) -> FiniteGroupTable:
    """Builtins: Z/n (aliases Zn, Z/n), S3, Q8."""
    key = name.strip().lower().replace("_", "").replace("-", "")
    if key.startswith("z/") or key.startswith("z"):
        digits = key[2:] if key.startswith("z/") else key[1:]
        if digits.isdigit() and int(digits) >= 1:
            n = int(digits)
            table = [[(i + j) % n for j in range(n)] for i in range(n)]
            return FiniteGroupTable.from_table(f"Z/{n}", table)
    if key == "s3":
        return FiniteGroupTable.from_permutations(
            "S3", [(1, 0, 2), (1, 2, 0)]
        )
    if key == "q8":
        # elements 1, -1, i, -i, j, -j, k, -k
        names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]

        def q_mul(x, y):
            sx, ux = (1 if not x % 2 else -1), x // 2
            sy, uy = (1 if not y % 2 else -1), y // 2
            # units: 0=1, 1=i, 2=j, 3=k
            prod = {
                (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
                (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
                (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
                (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
            }[(ux, uy)]
            s = sx * sy * prod[0]
            return 2 * prod[1] + (0 if s == 1 else 1)

        table = [[q_mul(x, y) for y in range(8)] for x in range(8)]
        return FiniteGroupTable.from_table("Q8", table)
    raise GroupTableError(f"unknown builtin group {name!r}")
