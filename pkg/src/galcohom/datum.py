"""
Arithmetic data: a finite group, a module over it and a finite set of places.

JSON layout (format 1), every integer written as a decimal string::

    {
      "format": 1,
      "name": "...",                        optional
      "group": {"labels": [...], "table": [[...]]}
             | {"permutations": [[...]], "labels": [...]},
      "module": {"invariants": ["8"], "action": [{"element": "3", "matrix": [["3"]]}]},
      "places": [{"stabilizer": ["1", "7"], "kind": "real", "label": "v7"}],
      "field_type": "number" | "function",
      "arch_mode": {"v7": "default" | {"mode": "user", "set": [...], "psi": [[...]]}},
      "named": {"eta": ["1", "0", "-1", "0", "0", "0"]},   optional, vectors in M[S]
      "metadata": {"predicted_sha2_order": "2"}             optional
    }

Module invariants use "0" for a copy of Z.  Action matrices are given for
a generating set of the group; the remaining ones are derived and the
action is checked for consistency.
"""

import json
import os

from .groups import FiniteGroup, Subgroup, GroupError
from .lattice import identity, matmul
from .modules import (
    GammaModule, ModuleError, PlaceOrbit, PlaceSet, build_phi, quotient_module,
    admissible_targets,
)

FORMAT = 1
TOP_KEYS = ("format", "name", "group", "module", "places", "field_type", "arch_mode", "named", "metadata")
DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


class DatumError(ValueError):
    def __init__(self, path, message):
        self.path = path
        super().__init__("%s: %s" % (path, message) if path else message)


class ArithmeticDatum:
    """Group, module, places and the bookkeeping needed to write them back."""

    def __init__(self, group, module, places, field_type="number", arch_mode=None, named=None,
                 metadata=None, name=None, group_form="table", action_elements=None):
        self.group = group
        self.module = module
        self.places = places
        self.field_type = field_type
        self.arch_mode = dict(arch_mode or {})
        self.named = dict(named or {})
        self.metadata = dict(metadata or {})
        self.name = name
        self.group_form = group_form
        self.action_elements = list(action_elements) if action_elements is not None \
            else generating_set(group)
        self._check_kinds()

    def _check_kinds(self):
        for o, orb in enumerate(self.places.orbits):
            if self.field_type == "function" and orb.kind != "finite":
                raise DatumError("places[%d].kind" % o, "function fields have no archimedean places")
        if self.field_type not in ("number", "function"):
            raise DatumError("field_type", "must be 'number' or 'function'")
        labels = [orb.label for orb in self.places.orbits]
        for key in self.arch_mode:
            if key not in labels:
                raise DatumError("arch_mode.%s" % key, "no orbit with this label")
            orb = self.places.orbits[labels.index(key)]
            if orb.kind != "real":
                raise DatumError("arch_mode.%s" % key, "orbit is not real")
        n = len(self.places) * self.module.rank
        for key, v in self.named.items():
            if len(v) != n:
                raise DatumError("named.%s" % key, "expected %d entries" % n)

    # derived data
    def with_places(self, places, keep_named=False):
        return ArithmeticDatum(self.group, self.module, places, self.field_type,
                               {k: v for k, v in self.arch_mode.items()
                                if k in [o.label for o in places.orbits]},
                               self.named if keep_named else None, None, self.name,
                               self.group_form, self.action_elements)

    def restricted(self, H, module, places):
        Hg, _ = H.as_group()
        return ArithmeticDatum(Hg, module, places, self.field_type, None, None, None,
                               (self.name or "datum") + "|" + H.label(), "table")

    def arch(self):
        """User-supplied archimedean data keyed by orbit index."""
        out = {}
        labels = [orb.label for orb in self.places.orbits]
        for key, mode in self.arch_mode.items():
            if mode == "default":
                continue
            out[labels.index(key)] = (list(mode["set"]), [tuple(c) for c in mode["psi"]])
        return out

    def orbit_label(self, o):
        return self.places.orbits[o].label or "w%d" % (o + 1)


def generating_set(G):
    return list(G.generators())


# ---------------------------------------------------------------- parsing

def _int(x, path):
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise DatumError(path, "expected an integer as a decimal string")
    if isinstance(x, int):
        return x
    try:
        return int(x, 10)
    except ValueError:
        raise DatumError(path, "not a decimal integer: %r" % x)


def _expect(obj, kind, path):
    if not isinstance(obj, kind):
        raise DatumError(path, "expected %s" % {dict: "an object", list: "a list", str: "a string"}[kind])
    return obj


def _keys(obj, allowed, required, path):
    for k in obj:
        if k not in allowed:
            raise DatumError("%s.%s" % (path, k) if path else k, "unknown field")
    for k in required:
        if k not in obj:
            raise DatumError(path or "<root>", "missing field %r" % k)


def _parse_group(g):
    _expect(g, dict, "group")
    _keys(g, ("labels", "table", "permutations"), (), "group")
    if ("table" in g) == ("permutations" in g):
        raise DatumError("group", "give exactly one of 'table' or 'permutations'")
    labels = None
    if "labels" in g:
        labels = [_expect(x, str, "group.labels[%d]" % i) for i, x in enumerate(_expect(g["labels"], list, "group.labels"))]
    try:
        if "table" in g:
            rows = _expect(g["table"], list, "group.table")
            table = [[_int(x, "group.table[%d][%d]" % (i, j)) for j, x in enumerate(_expect(r, list, "group.table[%d]" % i))]
                     for i, r in enumerate(rows)]
            G = FiniteGroup(table, labels=labels)
            return G, "table"
        perms = _expect(g["permutations"], list, "group.permutations")
        gens = [[_int(x, "group.permutations[%d][%d]" % (i, j)) for j, x in enumerate(_expect(p, list, "group.permutations[%d]" % i))]
                for i, p in enumerate(perms)]
        for i, p in enumerate(gens):
            if sorted(p) != list(range(len(p))):
                raise DatumError("group.permutations[%d]" % i, "not a permutation")
        G = FiniteGroup.from_permutations(gens)
        if labels is not None:
            if len(labels) != G.order:
                raise DatumError("group.labels", "label count does not match the order %d" % G.order)
            G.labels = labels
        return G, "permutations"
    except GroupError as e:
        raise DatumError("group", str(e))


def _element(G, x, path):
    _expect(x, str, path)
    if x not in G.labels:
        raise DatumError(path, "unknown group element %r" % x)
    return G.labels.index(x)


def _parse_module(G, m):
    _expect(m, dict, "module")
    _keys(m, ("invariants", "action"), ("invariants", "action"), "module")
    mods = [_int(x, "module.invariants[%d]" % i) for i, x in enumerate(_expect(m["invariants"], list, "module.invariants"))]
    for i, d in enumerate(mods):
        if d < 0 or d == 1:
            raise DatumError("module.invariants[%d]" % i, "invariant must be 0 or at least 2")
    s = len(mods)
    given = {}
    order = []
    for k, entry in enumerate(_expect(m["action"], list, "module.action")):
        path = "module.action[%d]" % k
        _expect(entry, dict, path)
        _keys(entry, ("element", "matrix"), ("element", "matrix"), path)
        g = _element(G, entry["element"], path + ".element")
        rows = _expect(entry["matrix"], list, path + ".matrix")
        A = [[_int(x, "%s.matrix[%d][%d]" % (path, i, j)) for j, x in enumerate(_expect(r, list, "%s.matrix[%d]" % (path, i)))]
             for i, r in enumerate(rows)]
        if len(A) != s or any(len(r) != s for r in A):
            raise DatumError(path + ".matrix", "expected a %dx%d matrix" % (s, s))
        given[g] = A
        order.append(g)
    rho = _close_action(G, given, s)
    if rho is None:
        raise DatumError("module.action", "the listed elements do not generate the group")
    try:
        M = GammaModule(G, mods, rho, check=True)
    except ModuleError as e:
        raise DatumError("module.action", str(e))
    for g, A in given.items():
        if not M.same_matrix(M.rho[g], A):
            raise DatumError("module.action", "action is ill-defined: relator not preserved at %s" % G.labels[g])
    return M, order


def _close_action(G, given, s):
    rho = {G.identity: identity(s)}
    frontier = [G.identity]
    while frontier:
        new = []
        for x in frontier:
            for g, A in given.items():
                y = G.mul(g, x)
                if y not in rho:
                    rho[y] = matmul(A, rho[x]) if s else []
                    new.append(y)
        frontier = new
    if len(rho) != G.order:
        return None
    return [rho[g] for g in range(G.order)]


def _parse_places(G, ps):
    orbits = []
    for k, p in enumerate(_expect(ps, list, "places")):
        path = "places[%d]" % k
        _expect(p, dict, path)
        _keys(p, ("stabilizer", "kind", "label"), ("stabilizer", "kind"), path)
        els = [_element(G, x, "%s.stabilizer[%d]" % (path, i))
               for i, x in enumerate(_expect(p["stabilizer"], list, path + ".stabilizer"))]
        try:
            H = Subgroup(G, els)
        except GroupError as e:
            raise DatumError(path + ".stabilizer", str(e))
        kind = _expect(p["kind"], str, path + ".kind")
        label = _expect(p["label"], str, path + ".label") if "label" in p else "w%d" % (k + 1)
        try:
            orbits.append(PlaceOrbit(G, H, kind, label))
        except ModuleError as e:
            raise DatumError(path, str(e))
    if not orbits:
        raise DatumError("places", "the place set is empty")
    labels = [o.label for o in orbits]
    if len(set(labels)) != len(labels):
        raise DatumError("places", "orbit labels must be distinct")
    return PlaceSet(G, orbits)


def _parse_arch(G, raw):
    out = {}
    for key, v in _expect(raw, dict, "arch_mode").items():
        path = "arch_mode.%s" % key
        if v == "default":
            out[key] = "default"
            continue
        _expect(v, dict, path)
        _keys(v, ("mode", "set", "psi"), ("mode", "set", "psi"), path)
        if v["mode"] != "user":
            raise DatumError(path + ".mode", "expected 'user'")
        labels = [_expect(x, str, "%s.set[%d]" % (path, i)) for i, x in enumerate(_expect(v["set"], list, path + ".set"))]
        psi = [[_int(x, "%s.psi[%d][%d]" % (path, i, j)) for j, x in enumerate(_expect(c, list, "%s.psi[%d]" % (path, i)))]
               for i, c in enumerate(_expect(v["psi"], list, path + ".psi"))]
        if len(psi) != len(labels):
            raise DatumError(path + ".psi", "need one value per set element")
        out[key] = {"mode": "user", "set": labels, "psi": psi}
    return out


def parse_datum(text):
    """ArithmeticDatum from JSON text; errors carry the JSON path."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise DatumError("", "malformed JSON: %s" % e)
    return datum_from_dict(obj)


def datum_from_dict(obj):
    _expect(obj, dict, "<root>")
    _keys(obj, TOP_KEYS, ("format", "group", "module", "places"), "")
    if obj["format"] != FORMAT:
        raise DatumError("format", "unsupported format %r" % obj["format"])
    G, form = _parse_group(obj["group"])
    M, action_elements = _parse_module(G, obj["module"])
    S = _parse_places(G, obj["places"])
    field_type = obj.get("field_type", "number")
    arch = _parse_arch(G, obj.get("arch_mode", {}))
    named = {}
    for key, v in _expect(obj.get("named", {}), dict, "named").items():
        named[key] = [_int(x, "named.%s[%d]" % (key, i)) for i, x in enumerate(_expect(v, list, "named." + key))]
    meta = {}
    for key, v in _expect(obj.get("metadata", {}), dict, "metadata").items():
        meta[key] = _int(v, "metadata." + key)
    name = _expect(obj["name"], str, "name") if "name" in obj else None
    return ArithmeticDatum(G, M, S, field_type, arch, named, meta, name, form, action_elements)


def load_datum(path):
    """Load a datum file; bare names fall back to the shipped data directory."""
    if not os.path.exists(path):
        cand = os.path.join(DATA_DIR, path if path.endswith(".json") else path + ".json")
        if os.path.exists(cand):
            path = cand
    with open(path, encoding="utf-8") as fh:
        return parse_datum(fh.read())


# ---------------------------------------------------------------- serialization

def datum_to_dict(d):
    G = d.group
    out = {"format": FORMAT}
    if d.name is not None:
        out["name"] = d.name
    if d.group_form == "permutations" and getattr(G, "perm_gens", None):
        out["group"] = {"permutations": [[str(x) for x in p] for p in G.perm_gens],
                        "labels": list(G.labels)}
    else:
        out["group"] = {"labels": list(G.labels), "table": [[str(x) for x in row] for row in G.table]}
    M = d.module
    out["module"] = {
        "invariants": [str(m) for m in M.mods],
        "action": [{"element": G.labels[g], "matrix": [[str(_canon_entry(x, M.mods[i])) for x in row]
                                                      for i, row in enumerate(M.rho[g])]}
                   for g in d.action_elements],
    }
    out["places"] = [{"stabilizer": [G.labels[h] for h in orb.stabilizer.elements], "kind": orb.kind,
                      "label": orb.label} for orb in d.places.orbits]
    out["field_type"] = d.field_type
    if d.arch_mode:
        arch = {}
        for k, v in d.arch_mode.items():
            arch[k] = v if v == "default" else {"mode": "user", "set": list(v["set"]),
                                                 "psi": [[str(x) for x in c] for c in v["psi"]]}
        out["arch_mode"] = arch
    if d.named:
        out["named"] = {k: [str(x) for x in v] for k, v in d.named.items()}
    if d.metadata:
        out["metadata"] = {k: str(v) for k, v in d.metadata.items()}
    return out


def _canon_entry(x, m):
    return x % m if m else x


def serialize_datum(d):
    return json.dumps(datum_to_dict(d), indent=2, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------- validation

def validate_datum(d):
    """Coverage per cyclic class, archimedean placement and a witness phi."""
    G, S = d.group, d.places
    classes = []
    for C in G.cyclic_subgroups():
        cov = [S.orbits[t].label for t in sorted({t for t, _ in admissible_targets(C, S.orbits)})]
        classes.append({"class": C.label(), "order": C.order, "covered_by": cov})
    uncovered = [c["class"] for c in classes if not c["covered_by"]]
    arch = []
    problems = []
    for o, orb in enumerate(S.orbits):
        if orb.kind == "real":
            arch.append({"orbit": orb.label, "stabilizer_order": orb.stabilizer.order,
                         "mode": "user" if isinstance(d.arch_mode.get(orb.label), dict) else "default"})
    if d.field_type == "function" and arch:
        problems.append("archimedean orbit in a function-field datum")
    phi = None
    if not uncovered:
        from .global_cohomology import residual_orbits
        R = PlaceSet(G, residual_orbits(G))
        f = build_phi(R, S)
        phi = []
        for C, (t, g) in zip(G.cyclic_subgroups(), f.choice):
            phi.append({"class": C.label(), "orbit": S.orbits[t].label, "conjugator": G.labels[g]})
    return {"ok": not uncovered and not problems, "coverage": classes, "uncovered": uncovered,
            "archimedean": arch, "problems": problems, "phi": phi}


# ---------------------------------------------------------------- builders

def builder_paper_example():
    """Gamma = (Z/8)^x acting on Z/8 by multiplication; orbits <3>, <5>, <7> (real)."""
    G = FiniteGroup.units_mod(8)
    M = GammaModule.character(G, 8, [1, 3, 5, 7])
    lab = G.labels

    def sub(a):
        return Subgroup(G, [0, lab.index(a)])

    orbits = [PlaceOrbit(G, sub("3"), "finite", "v3"), PlaceOrbit(G, sub("5"), "finite", "v5"),
              PlaceOrbit(G, sub("7"), "real", "v7")]
    S = PlaceSet(G, orbits)
    return ArithmeticDatum(G, M, S, "number", {"v7": "default"}, {"η₈": [1, 0, -1, 0, 0, 0]},
                           None, "paper-8.6", "table", [lab.index("3"), lab.index("5")])


def sansuc_module(G):
    """Z[G] modulo the norm element."""
    R = GammaModule.regular(G)
    Q, _ = quotient_module(R, [[1] * G.order])
    return Q


def builder_sansuc_torus(G, classes, name=None, group_form="table"):
    """One finite orbit per listed subgroup, plus orbits covering any missing cyclic class.

    The predicted order n / lcm(n_v) of Sha^2 is stored in the metadata.
    """
    orbits = []
    for k, H in enumerate(classes):
        if H.parent is not G:
            raise DatumError("classes[%d]" % k, "not a subgroup of the group")
        orbits.append(PlaceOrbit(G, H, "finite", "v%d_%s" % (k + 1, H.label())))
    for C in G.cyclic_subgroups():
        if not admissible_targets(C, orbits):
            orbits.append(PlaceOrbit(G, C, "finite", "v%d_%s" % (len(orbits) + 1, C.label())))
    S = PlaceSet(G, orbits)
    l = 1
    for orb in orbits:
        l = _lcm(l, orb.stabilizer.order)
    meta = {"predicted_sha2_order": G.order // l}
    return ArithmeticDatum(G, sansuc_module(G), S, "number", None, None, meta, name, group_form)


def _lcm(a, b):
    from math import gcd
    return a * b // gcd(a, b)


def subgroup_by_labels(G, names):
    """Subgroup generated by the elements with the given labels."""
    for n in names:
        if n not in G.labels:
            raise DatumError("classes", "unknown group element %r" % n)
    return G.generated([G.labels.index(n) for n in names])


def builder_klein_sansuc():
    G = FiniteGroup.klein()
    classes = [subgroup_by_labels(G, [x]) for x in ("a", "b", "ab")]
    return builder_sansuc_torus(G, classes, "klein-sansuc")


def builder_s3_trivial():
    G = FiniteGroup.symmetric(3)
    M = GammaModule.trivial(G, [0])
    S = PlaceSet(G, [PlaceOrbit(G, G.whole(), "finite", "v")])
    return ArithmeticDatum(G, M, S, "number", None, None, None, "s3-trivial", "permutations")


BUILDERS = {
    "paper-8.6": builder_paper_example,
    "klein-sansuc": builder_klein_sansuc,
    "s3-trivial": builder_s3_trivial,
}


def shipped_files():
    return sorted(f for f in os.listdir(DATA_DIR) if f.endswith(".json"))


def write_shipped():
    """Regenerate the shipped JSON files from the builders."""
    os.makedirs(DATA_DIR, exist_ok=True)
    for name, build in BUILDERS.items():
        with open(os.path.join(DATA_DIR, name + ".json"), "w", encoding="utf-8") as fh:
            fh.write(serialize_datum(build()))
