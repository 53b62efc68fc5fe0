"""Duality bridge: a product engine against the transpose of a coproduct table."""
from __future__ import annotations

import itertools


def transpose_coproduct(word_coproduct, k: int, max_len: int) -> dict:
    """``{(u, v): {w: <u⊗v | Δ(w)>}}`` over all words ``|w| <= max_len``."""
    table: dict = {}
    for n in range(max_len + 1):
        for w in itertools.product(range(k), repeat=n):
            for (u, v), c in word_coproduct(w).items():
                if c:
                    table.setdefault((u, v), {})[w] = c
    return table


def bridge_mismatch(word_product, word_coproduct, k: int, max_total: int, max_len: int):
    """First ``(u, v)`` with ``|u|+|v| <= max_total`` where the two sides differ, else ``None``."""
    table = transpose_coproduct(word_coproduct, k, max_len)
    for total in range(max_total + 1):
        for m in range(total + 1):
            for u in itertools.product(range(k), repeat=m):
                for v in itertools.product(range(k), repeat=total - m):
                    prod = {w: c for w, c in word_product(u, v).items() if c and len(w) <= max_len}
                    if prod != table.get((u, v), {}):
                        return u, v, prod, table.get((u, v), {})
    return None
