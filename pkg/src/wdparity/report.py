"""Small structured report records shared by the checking layers."""

from dataclasses import dataclass


@dataclass(frozen=True)
class IdentityCheck:
    """One verified identity: both sides rendered plus a pass flag."""

    name: str
    lhs: str
    rhs: str
    ok: bool


@dataclass(frozen=True)
class IdentityReport:
    items: tuple

    @property
    def ok(self) -> bool:
        return all(item.ok for item in self.items)

    def lines(self):
        out = []
        for item in self.items:
            mark = "ok" if item.ok else "FAIL"
            side = f"{item.lhs} vs {item.rhs}" if item.rhs else item.lhs
            out.append(f"[{mark}] {item.name}: {side}")
        return out
