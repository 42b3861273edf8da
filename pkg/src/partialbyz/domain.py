"""Value domain for agreement: a finite, totally ordered set of symbols.

The domain always contains the empty value ``⊥`` plus ``0`` and ``1``,
and ``⊥`` sits at the bottom of the order so deterministic tie-breaks
(majority fallbacks, min over a value set) are well defined. Inside the
library values travel as integer codes (positions in the symbol tuple);
symbols appear only at serialization and display boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass

BOT_SYMBOL = "⊥"


@dataclass(frozen=True)
class ValueDomain:
    symbols: tuple[str, ...] = (BOT_SYMBOL, "0", "1")

    def __post_init__(self) -> None:
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("value domain has duplicate symbols")
        for required in (BOT_SYMBOL, "0", "1"):
            if required not in self.symbols:
                raise ValueError(f"value domain must contain {required!r}")
        if self.symbols[0] != BOT_SYMBOL:
            raise ValueError("the empty value must be the smallest domain element")

    def __len__(self) -> int:
        return len(self.symbols)

    def code(self, symbol: str) -> int:
        try:
            return self.symbols.index(symbol)
        except ValueError:
            raise ValueError(f"{symbol!r} is not in the value domain") from None

    def symbol(self, code: int) -> str:
        return self.symbols[code]


DEFAULT_DOMAIN = ValueDomain()

# Codes in the default {⊥, 0, 1} domain.
BOT = 0
ZERO = 1
ONE = 2
