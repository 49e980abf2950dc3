"""Text session format and the ``perflevel`` command line."""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import re
import sys
from dataclasses import dataclass, field

from .complexes import (
    ChainComplex,
    ModulePresentation,
    homology,
    is_null_homotopic,
    make_complex,
    minimize,
    multiplication_map,
    residue_field,
)
from .errors import AlgebraError, MalformedInput
from .koszul import check_well_defined, cycles_in_mK, koszul, koszul_of_ideal
from .level import everyn_example, level_of_module, level_report
from .resolutions import is_free, pd_probe, resolve_module
from .rings import Ideal, make_ring

DEFAULT_PRIME = 32003
REPORT_KEYS = ("object", "command", "lower", "upper", "exact", "certificates", "cited", "homology", "betti", "notes")


class SessionError(MalformedInput):
    def __init__(self, message, line=None, column=None):
        self.line, self.column = line, column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


# -- parsing -------------------------------------------------------------


class _Scanner:
    def __init__(self, text):
        # blank out comments in place so offsets and columns are unchanged
        self.text = re.sub(r"#[^\n]*", lambda m: " " * len(m.group()), text)
        self.pos = 0

    def where(self, pos=None):
        pos = self.pos if pos is None else pos
        line = self.text.count("\n", 0, pos) + 1
        col = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, col

    def error(self, msg, pos=None):
        return SessionError(msg, *self.where(pos))

    def skip(self):
        t = self.text
        while self.pos < len(t):
            c = t[self.pos]
            if not c.isspace():
                break
            self.pos += 1

    def eof(self):
        self.skip()
        return self.pos >= len(self.text)

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def ident(self, what="identifier"):
        self.skip()
        start = self.pos
        t = self.text
        if start < len(t) and (t[start].isalpha() or t[start] == "_"):
            end = start + 1
            while end < len(t) and (t[end].isalnum() or t[end] == "_"):
                end += 1
            self.pos = end
            return t[start:end]
        raise self.error(f"expected {what}")

    def expect(self, s):
        self.skip()
        if not self.text.startswith(s, self.pos):
            raise self.error(f"expected '{s}'")
        self.pos += len(s)

    def integer(self):
        self.skip()
        t = self.text
        start = self.pos
        end = start + 1 if start < len(t) and t[start] == "-" else start
        while end < len(t) and t[end].isdigit():
            end += 1
        if end == start or t[start:end] == "-":
            raise self.error("expected an integer")
        self.pos = end
        return int(t[start:end])

    def raw_value(self):
        """Text up to the next ';' or '}' outside brackets; returns (text, offset)."""
        self.skip()
        start = self.pos
        depth = 0
        t = self.text
        while self.pos < len(t):
            c = t[self.pos]
            if c == "[":
                depth += 1
            elif c == "]":
                depth -= 1
                if depth < 0:
                    raise self.error("unbalanced ']'")
            elif depth == 0 and c in ";}":
                break
            self.pos += 1
        if depth:
            raise self.error("unbalanced '['", start)
        text = t[start:self.pos]
        if self.pos < len(t) and t[self.pos] == ";":
            self.pos += 1
        return text.rstrip(), start


def _split_top(text, offset):
    """Split on commas outside brackets; yields (piece, absolute offset)."""
    out, depth, start = [], 0, 0
    for i, c in enumerate(text):
        if c == "[":
            depth += 1
        elif c == "]":
            depth -= 1
        elif c == "," and depth == 0:
            out.append((text[start:i], offset + start))
            start = i + 1
    out.append((text[start:], offset + start))
    cleaned = []
    for piece, at in out:
        lead = len(piece) - len(piece.lstrip())
        cleaned.append((piece.strip(), at + lead))
    if len(cleaned) == 1 and not cleaned[0][0]:
        return []
    return cleaned


def _strip_brackets(sc, text, offset):
    s = text.strip()
    lead = len(text) - len(text.lstrip())
    if not (s.startswith("[") and s.endswith("]")):
        raise sc.error("expected a bracketed list", offset + lead)
    return s[1:-1], offset + lead + 1


@dataclass
class _Decl:
    kind: str
    name: str
    pos: int
    fields: dict  # key -> (raw, offset); complex keys are ("twists", i) / ("d", i)
    parent: str | None = None


@dataclass(eq=False)
class Session:
    rings: dict = field(default_factory=dict)
    ideals: dict = field(default_factory=dict)
    modules: dict = field(default_factory=dict)
    complexes: dict = field(default_factory=dict)
    maps: dict = field(default_factory=dict)
    digest: str = ""
    order: list = field(default_factory=list)  # (kind, name) in declaration order
    parents: dict = field(default_factory=dict)

    def names(self):
        return [n for _, n in self.order]

    def __eq__(self, other):
        if not isinstance(other, Session) or self.order != other.order:
            return False
        if self.parents != other.parents:
            return False
        for n, R in self.rings.items():
            R2 = other.rings[n]
            if (R.p, R.variables, R.order, R.relations) != (R2.p, R2.variables, R2.order, R2.relations):
                return False
        for n, I in self.ideals.items():
            if I.generators != other.ideals[n].generators:
                return False
        for n, M in self.modules.items():
            M2 = other.modules[n]
            if M.twists != M2.twists or M.relations != M2.relations:
                return False
        return all(F == other.complexes[n] for n, F in self.complexes.items())

    __hash__ = object.__hash__


def _parse_decls(text):
    sc = _Scanner(text)
    decls = []
    while not sc.eof():
        start = sc.pos
        kind = sc.ident("a block keyword")
        if kind not in ("ring", "ideal", "module", "complex", "map"):
            raise sc.error(f"unknown block '{kind}'", start)
        name = sc.ident("a name")
        parent = None
        if kind == "ideal":
            kw = sc.ident("'in'")
            if kw != "in":
                raise sc.error("expected 'in'")
            parent = sc.ident("a ring name")
        elif kind in ("module", "complex", "map"):
            kw = sc.ident("'over'")
            if kw != "over":
                raise sc.error("expected 'over'")
            parent = sc.ident("a ring name")
        sc.expect("{")
        fields = {}
        while sc.peek() != "}":
            if sc.peek() == "":
                raise sc.error("unterminated block", start)
            kpos = sc.pos
            key = sc.ident("a field name")
            if kind == "complex" and key in ("twists", "d"):
                key = (key, sc.integer())
            sc.expect("=")
            raw, at = sc.raw_value()
            if key in fields:
                raise sc.error(f"duplicate field {key}", kpos)
            fields[key] = (raw, at)
        sc.expect("}")
        sc.skip()
        if sc.pos < len(text) and text[sc.pos] == ";":
            sc.pos += 1
        decls.append(_Decl(kind, name, start, fields, parent))
    return sc, decls


def _polys(sc, R, raw, offset):
    out = []
    for piece, at in _split_top(raw, offset):
        if not piece:
            raise sc.error("empty polynomial", at)
        try:
            out.append(R.S.parse(piece))
        except AlgebraError as exc:
            m = re.search(r"at offset (\d+)", str(exc))
            where = at + int(m.group(1)) if m else at
            raise sc.error(str(exc).split(" at offset")[0], where) from None
    return out


def _matrix(sc, R, raw, offset):
    inner, at = _strip_brackets(sc, raw, offset)
    rows = []
    for piece, p_at in _split_top(inner, at):
        body, b_at = _strip_brackets(sc, piece, p_at)
        rows.append([R.reduce(f) for f in _polys(sc, R, body, b_at)])
    return rows


def _ints(sc, raw, offset):
    inner, at = _strip_brackets(sc, raw, offset)
    out = []
    for piece, p_at in _split_top(inner, at):
        try:
            out.append(int(piece))
        except ValueError:
            raise sc.error(f"expected an integer, got {piece!r}", p_at) from None
    return out


def _build_ring(sc, d, prime):
    f = d.fields
    unknown = set(f) - {"p", "vars", "order", "relations"}
    if unknown:
        raise sc.error(f"unknown ring field {sorted(unknown)[0]}", d.pos)
    p = DEFAULT_PRIME
    if "p" in f:
        raw, at = f["p"]
        try:
            p = int(raw)
        except ValueError:
            raise sc.error("p must be an integer", at) from None
    if prime is not None:
        p = prime
    if "vars" not in f:
        raise sc.error("ring needs vars", d.pos)
    variables = [v for v, _ in _split_top(*f["vars"])]
    order = f["order"][0].strip() if "order" in f else "grevlex"
    try:
        from .polyring import PolynomialRing

        S = PolynomialRing(p, variables, order)
        rels = _polys(sc, _Bare(S), *f["relations"]) if "relations" in f else []
        return make_ring(p, variables, order, rels)
    except SessionError:
        raise
    except AlgebraError as exc:
        raise sc.error(str(exc), d.pos) from None


class _Bare:
    """Polynomial-ring stand-in so ring relations parse before the quotient exists."""

    def __init__(self, S):
        self.S = S

    def reduce(self, f):
        return f


def parse_session(text, prime=None):
    sc, decls = _parse_decls(text)
    sess = Session(digest=hashlib.sha256(text.encode()).hexdigest())
    seen = set()
    for d in decls:
        if d.name in seen:
            raise sc.error(f"duplicate name '{d.name}'", d.pos)
        seen.add(d.name)
        R = None
        if d.parent is not None:
            if d.parent not in sess.rings:
                raise sc.error(f"unknown ring '{d.parent}'", d.pos)
            R = sess.rings[d.parent]
            sess.parents[d.name] = d.parent
        try:
            if d.kind == "ring":
                sess.rings[d.name] = _build_ring(sc, d, prime)
            elif d.kind == "ideal":
                gens = _polys(sc, R, *d.fields["gens"]) if "gens" in d.fields else []
                sess.ideals[d.name] = Ideal(R, gens)
            elif d.kind == "module":
                twists = _ints(sc, *d.fields["twists"]) if "twists" in d.fields else None
                rows = _matrix(sc, R, *d.fields["presentation"]) if "presentation" in d.fields else []
                if twists is None:
                    twists = [0] * len(rows)
                if rows and len(rows) != len(twists):
                    raise sc.error("presentation needs one row per generator", d.pos)
                ncols = len(rows[0]) if rows else 0
                if any(len(r) != ncols for r in rows):
                    raise sc.error("presentation rows have different lengths", d.pos)
                cols = [tuple(r[c] for r in rows) for c in range(ncols)]
                sess.modules[d.name] = ModulePresentation(R, tuple(twists), cols)
            elif d.kind == "complex":
                sess.complexes[d.name] = _build_complex(sc, d, R)
            else:
                # chain-map blocks are accepted for forward compatibility but ignored
                sess.maps[d.name] = d.fields
        except SessionError:
            raise
        except (AlgebraError, KeyError) as exc:
            raise sc.error(str(exc), d.pos) from None
        sess.order.append((d.kind, d.name))
    return sess


def _build_complex(sc, d, R):
    f = d.fields
    if "range" not in f:
        raise sc.error("complex needs a range", d.pos)
    raw, at = f["range"]
    try:
        lo_s, hi_s = raw.split("..")
        lo, hi = int(lo_s), int(hi_s)
    except ValueError:
        raise sc.error("range must look like LO..HI", at) from None
    modules, diffs = {}, {}
    for key, (raw, at) in f.items():
        if key == "range":
            continue
        if not isinstance(key, tuple):
            raise sc.error(f"unknown complex field {key}", at)
        kind, i = key
        if kind == "twists":
            if not lo <= i <= hi:
                raise sc.error(f"twists for degree {i} outside the range", at)
            modules[i] = _ints(sc, raw, at)
    for i in range(lo, hi + 1):
        modules.setdefault(i, [])
    for key, (raw, at) in f.items():
        if isinstance(key, tuple) and key[0] == "d":
            i = key[1]
            if not lo < i <= hi:
                raise sc.error(f"differential d {i} outside the range", at)
            rows = _matrix(sc, R, raw, at)
            if len(rows) != len(modules[i - 1]) and not (not rows and not modules[i - 1]):
                raise sc.error(f"rank/twist mismatch at degree {i}: expected {len(modules[i - 1])} rows", at)
            if any(len(r) != len(modules[i]) for r in rows):
                raise sc.error(f"rank/twist mismatch at degree {i}: expected {len(modules[i])} columns", at)
            diffs[i] = rows
    if lo > hi:
        return ChainComplex(R, {})
    return make_complex(R, modules, diffs)


# -- serialization ----------------------------------------------------------


def _fmt_matrix(rows):
    return "[" + ", ".join("[" + ", ".join(str(f) for f in r) + "]" for r in rows) + "]"


def to_text(sess):
    out = []
    for kind, name in sess.order:
        if kind == "ring":
            R = sess.rings[name]
            lines = [f"  p = {R.p};", f"  vars = {', '.join(R.variables)};", f"  order = {R.order};"]
            if R.relations:
                lines.append(f"  relations = {', '.join(str(f) for f in R.relations)};")
            out.append(f"ring {name} {{\n" + "\n".join(lines) + "\n}")
        elif kind == "ideal":
            I = sess.ideals[name]
            gens = ", ".join(str(g) for g in I.generators)
            out.append(f"ideal {name} in {sess.parents[name]} {{\n  gens = {gens};\n}}")
        elif kind == "module":
            M = sess.modules[name]
            rows = [[col[j] for col in M.relations] for j in range(len(M.twists))]
            out.append(
                f"module {name} over {sess.parents[name]} {{\n"
                f"  presentation = {_fmt_matrix(rows)};\n"
                f"  twists = [{', '.join(map(str, M.twists))}];\n}}"
            )
        elif kind == "complex":
            F = sess.complexes[name]
            lines = [f"  range = {F.lo}..{F.hi};"]
            for i in F.degrees():
                lines.append(f"  twists {i} = [{', '.join(map(str, F.module(i).twists))}];")
            for i in range(F.lo + 1, F.hi + 1):
                lines.append(f"  d {i} = {_fmt_matrix(F.d(i).entries)};")
            out.append(f"complex {name} over {sess.parents[name]} {{\n" + "\n".join(lines) + "\n}")
    return "\n\n".join(out) + "\n"


# -- commands ---------------------------------------------------------------


class UsageError(Exception):
    pass


def _doc(command, obj, **extra):
    doc = {k: None for k in REPORT_KEYS}
    doc["command"] = command
    doc["object"] = obj
    doc["notes"] = []
    doc.update(extra)
    return doc


def _homology_doc(F):
    out = {}
    for i in F.degrees():
        h = homology(F, i)
        out[str(i)] = {
            "zero": h.is_zero,
            "min_gens": h.min_gens,
            "finite_length": h.finite_length,
            "length": None if h.length == math.inf else h.length,
            "hilbert": h.hilbert,
            "hilbert_from": h.window()[0],
        }
    return out


def _lookup(table, name, what):
    if name not in table:
        raise UsageError(f"unknown {what} '{name}'")
    return table[name]


def _pick_ring(sess, args):
    if args.ring:
        return _lookup(sess.rings, args.ring, "ring")
    if len(sess.rings) == 1:
        return next(iter(sess.rings.values()))
    raise UsageError("several rings declared; pass --ring")


def _pick_ideal(sess, args, R=None):
    name = args.ideal
    if name in sess.ideals:
        return sess.ideals[name]
    if name == "m":
        R = R or _pick_ring(sess, args)
        return R.maximal_ideal()
    raise UsageError(f"unknown ideal '{name}'")


def _koszul_data(sess, args):
    I = _pick_ideal(sess, args)
    power = args.power or 1
    return koszul_of_ideal(I, power), I


def cmd_homology(sess, args):
    if not args.complex:
        raise UsageError("homology needs --complex")
    F = _lookup(sess.complexes, args.complex, "complex")
    return _doc("homology", args.complex, homology=_homology_doc(F)), True


def cmd_resolve(sess, args):
    if args.module:
        M = _lookup(sess.modules, args.module, "module")
        res = resolve_module(M, steps=args.steps)
        return _doc("resolve", args.module, betti=res.betti, complete=res.complete), True
    if args.complex:
        F = _lookup(sess.complexes, args.complex, "complex")
        P = minimize(F)
        ranks = {str(i): P.rank(i) for i in P.degrees()}
        return _doc("resolve", args.complex, betti=[P.rank(i) for i in P.degrees()], ranks=ranks), True
    raise UsageError("resolve needs --module or --complex")


def cmd_koszul(sess, args):
    if not args.ideal:
        raise UsageError("koszul needs --ideal")
    data, I = _koszul_data(sess, args)
    rep = level_report(data, steps=args.steps, name=f"K({args.ideal})")
    doc = rep.to_dict("koszul")
    doc["betti"] = [data.complex.rank(i) for i in data.complex.degrees()]
    doc["generators"] = [str(g) for g in data.generators]
    return doc, True


def cmd_level(sess, args):
    if args.complex:
        F = _lookup(sess.complexes, args.complex, "complex")
        ideals = [_pick_ideal(sess, args, F.ring)] if args.ideal else []
        return level_report(F, ideals=ideals, steps=args.steps, name=args.complex).to_dict("level"), True
    if args.module:
        M = _lookup(sess.modules, args.module, "module")
        return level_of_module(M, bound=args.steps, name=args.module).to_dict("level"), True
    if args.ideal:
        data, _ = _koszul_data(sess, args)
        return level_report(data, steps=args.steps, name=f"K({args.ideal})").to_dict("level"), True
    raise UsageError("level needs --complex, --module or --ideal")


def _suite_everyn(sess, args):
    R = _pick_ring(sess, args)
    out = []
    for n in range(0, args.max_n + 1):
        ex = everyn_example(R, n)
        ok = ex.upper.value == n + 1 and ex.lower.value == n + 1 and ex.lower.replay()
        out.append({"name": f"everyn n={n}", "passed": ok, "lower": ex.lower.value, "upper": ex.upper.value})
    return out


def _suite_gaps(sess, args):
    out = []
    for name, F in sess.complexes.items():
        rep = level_report(F, steps=args.steps, name=name)
        replays = all(c.replay() for c in rep.certificates)
        ok = rep.lower <= rep.upper and replays
        out.append({"name": f"gaps {name}", "passed": ok, "lower": rep.lower, "upper": rep.upper})
    return out


def _suite_pd(sess, args):
    out = []
    mods = dict(sess.modules)
    if args.ring or len(sess.rings) == 1:
        mods.setdefault("k", residue_field(_pick_ring(sess, args)))
    for name, M in mods.items():
        rep = level_of_module(M, bound=args.steps, name=name)
        probe = pd_probe(M, 0)
        free_ok = is_free(M) == (probe.exact == 0)
        ok = rep.lower <= (rep.upper if rep.upper is not None else math.inf) and free_ok
        ok = ok and all(c.replay() for c in rep.certificates)
        out.append({"name": f"pd {name}", "passed": ok, "lower": rep.lower, "upper": rep.upper})
    return out


def _suite_koszul(sess, args):
    R = _pick_ring(sess, args)
    out = []
    K = koszul(R, R.gens)
    rep = level_report(K, steps=args.steps)
    out.append({
        "name": "level K(m) = edim + 1",
        "passed": rep.exact and rep.lower == R.edim + 1,
        "lower": rep.lower,
        "upper": rep.upper,
    })
    if R.nvars:
        wd = check_well_defined(R, R.gens, R.gens[0])
        out.append({"name": "generating set independence", "passed": wd.passed})
    out.append({"name": "cycles lie in mK", "passed": cycles_in_mK(R, R.gens)})
    homotopic = all(is_null_homotopic(multiplication_map(K.complex, g)) for g in R.gens)
    out.append({"name": "multiplication by generators is null-homotopic", "passed": homotopic})
    return out


SUITES = {"everyn": _suite_everyn, "gaps": _suite_gaps, "pd": _suite_pd, "koszul": _suite_koszul}


def cmd_verify(sess, args):
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite '{args.suite}'")
    rows = SUITES[args.suite](sess, args)
    passed = all(r["passed"] for r in rows)
    doc = _doc("verify", args.suite, assertions=rows, passes=sum(r["passed"] for r in rows))
    return doc, passed


COMMANDS = {
    "homology": cmd_homology,
    "resolve": cmd_resolve,
    "koszul": cmd_koszul,
    "level": cmd_level,
    "verify": cmd_verify,
}


def run(command, sess, args):
    if command not in COMMANDS:
        raise UsageError(f"unknown command '{command}'")
    return COMMANDS[command](sess, args)


def build_parser():
    ap = argparse.ArgumentParser(prog="perflevel", description="Level bounds for complexes over graded rings.")
    ap.add_argument("command", choices=sorted(COMMANDS))
    ap.add_argument("file", help="session file, or - for stdin")
    ap.add_argument("--complex")
    ap.add_argument("--module")
    ap.add_argument("--ring")
    ap.add_argument("--ideal")
    ap.add_argument("--steps", type=int, default=10)
    ap.add_argument("--power", type=int)
    ap.add_argument("--prime", type=int)
    ap.add_argument("--suite", default="gaps")
    ap.add_argument("--max-n", dest="max_n", type=int, default=5)
    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.steps < 1:
            raise UsageError("--steps must be positive")
        if args.power is not None and args.power < 1:
            raise UsageError("--power must be positive")
        if args.max_n < 0:
            raise UsageError("--max-n must be non-negative")
        if args.file == "-":
            text = sys.stdin.read()
        else:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
        sess = parse_session(text, prime=args.prime)
        doc, ok = run(args.command, sess, args)
    except (UsageError, AlgebraError, OSError) as exc:
        print(json.dumps({"command": args.command, "error": str(exc)}))
        return 2
    print(json.dumps(doc, indent=2))
    return 0 if ok else 1
