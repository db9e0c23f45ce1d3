"""Type-name resolution.

Simple names are resolved by, in order: an import whose last segment
matches, a class declared in the same unit, and finally the unit's own
package. Dotted names are taken as already qualified. Primitives and
``String`` resolve to themselves and carry no package.
"""

from __future__ import annotations

from dataclasses import replace
from typing import Dict, List

from . import nodes as n


class ResolveError(Exception):
    pass


def import_table(unit: n.SourceUnit) -> Dict[str, List[str]]:
    table: Dict[str, List[str]] = {}
    for imp in unit.imports:
        table.setdefault(imp.rsplit(".", 1)[-1], []).append(imp)
    return table


def resolve_name(name: str, unit: n.SourceUnit, imports=None) -> str:
    if name in n.PRIMITIVES or "." in name:
        return name
    imports = import_table(unit) if imports is None else imports
    hits = imports.get(name, [])
    if len(hits) > 1:
        raise ResolveError(f"ambiguous type {name!r}: imported as {', '.join(hits)}")
    if hits:
        return hits[0]
    # declared in this unit, or assumed to live in the same package
    return f"{unit.package_name}.{name}"


def resolve_types(unit: n.SourceUnit) -> n.SourceUnit:
    """Return a copy of ``unit`` in which every TypeRef has ``resolved`` set."""
    imports = import_table(unit)

    def fix(node):
        if isinstance(node, n.TypeRef) and node.resolved is None:
            return replace(node, resolved=resolve_name(node.name, unit, imports))
        return node

    return n.transform(unit, fix)
