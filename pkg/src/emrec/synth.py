"""Synthetic JX programs with a well-separated helper method.

Each generated program has one host method that calls a void helper
exactly once. The helper touches only its own variables and only types
from ``lib.*`` packages, while the host works on ``app.*`` types through
a single shared variable. After inlining the helper, its statements form
the only candidate whose dependency sets are disjoint from the rest of
the method, so an ideal recommender ranks exactly that range first.
"""

from __future__ import annotations

import random
from typing import List, Tuple

_HOST_TYPES = [("app.core", "Ledger"), ("app.store", "Inventory"), ("app.web", "Session"),
               ("app.core.audit", "Journal"), ("app.sched", "Planner")]
_LIB_TYPES = [("lib.gfx", "Canvas", "Brush"), ("lib.io", "Sink", "Buffer"),
              ("lib.net", "Socket", "Frame"), ("lib.math.stats", "Sampler", "Histogram"),
              ("lib.text", "Document", "Cursor")]
_HOST_VERBS = ["step", "record", "push", "mark", "touch"]
_LIB_VERBS = ["draw", "emit", "send", "feed", "write"]
_CLASS_NAMES = ["Report", "Viewer", "Exporter", "Scanner", "Printer", "Loader", "Tracker"]


def _host_stmts(rng: random.Random, h: str, count: int, tag: str) -> List[str]:
    out = []
    for k in range(count):
        verb = rng.choice(_HOST_VERBS)
        if rng.random() < 0.25:
            out.append(f"int {tag}{k} = {h}.size();")
            out.append(f"{h}.{verb}({tag}{k});")
        else:
            out.append(f"{h}.{verb}({rng.randint(0, 9)});")
    return out


def _helper_body(rng: random.Random, lib, params: List[str]) -> List[str]:
    pkg, main, aux = lib
    body = [f"{main} obj = new {main}({', '.join(params)});"]
    has_part = False
    for _ in range(rng.randint(2, 4)):
        roll = rng.random()
        verb = rng.choice(_LIB_VERBS)
        if roll < 0.2 and not has_part:
            body.append(f"{aux} part = obj.part();")
            body.append(f"part.{verb}(obj);")
            has_part = True
        elif roll < 0.35:
            body.append(f"for (int i = 0; i < {rng.randint(2, 5)}; i = i + 1) {{ obj.{verb}(i); }}")
        elif roll < 0.5:
            body.append(f"if (obj.ready()) {{ obj.{verb}(1); obj.{verb}(2); }}")
        else:
            body.append(f"obj.{verb}({rng.randint(0, 9)});")
    return body


def planted_program(seed: int) -> Tuple[str, str]:
    """One program as ``(helper_name, source_text)``."""
    rng = random.Random(seed)
    hpkg, htype = rng.choice(_HOST_TYPES)
    lib = rng.choice(_LIB_TYPES)
    cname = rng.choice(_CLASS_NAMES) + str(seed)
    helper = f"render{seed}"
    nparams = rng.randint(0, 2)
    params = [f"w{k}" for k in range(nparams)]
    h = "h"

    host = [f"{htype} {h} = new {htype}();"]
    host += _host_stmts(rng, h, rng.randint(0, 2), "pre")
    args = ", ".join(str(rng.randint(1, 99)) for _ in params)
    host.append(f"{helper}({args});")
    tail = _host_stmts(rng, h, rng.randint(1, 2), "post")
    if rng.random() < 0.4:
        tail.append(f"if ({h}.ready()) {{ {h}.flush(1); {h}.flush(2); {h}.flush(3); }}")
    host += tail

    body = _helper_body(rng, lib, params)
    sig = ", ".join(f"int {p}" for p in params)
    lines = [
        f"package app.gen{seed % 7};",
        f"import {hpkg}.{htype};",
        f"import {lib[0]}.{lib[1]};",
        f"import {lib[0]}.{lib[2]};",
        f"class {cname} {{",
        "    void run() {",
        *("        " + s for s in host),
        "    }",
        f"    void {helper}({sig}) {{",
        *("        " + s for s in body),
        "    }",
        "}",
    ]
    return helper, "\n".join(lines) + "\n"


def planted_corpus(count: int, seed: int = 0) -> List[Tuple[str, str]]:
    """``count`` programs as ``(file_name, source_text)`` pairs."""
    return [(f"prog{k:03d}.jx", planted_program(seed * 1000 + k)[1]) for k in range(count)]
