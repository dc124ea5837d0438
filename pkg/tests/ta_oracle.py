"""Independent explicit-graph oracle for small timed-automata networks.

Shares only the AST shapes with the checker: evaluation, successor
generation and search are written separately over plain dicts.
"""

from __future__ import annotations

import random
from collections import deque

from hricdv.ta_checker import EXISTS, parse_network, parse_query


def ev(e, env):
    tag = e[0]
    if tag == "int":
        return e[1]
    if tag == "bool":
        return e[1]
    if tag == "name":
        return env["vals"][e[1]]
    if tag == "loc":
        return env["locs"][e[1]] == e[2]
    if tag == "not":
        return not ev(e[1], env)
    if tag == "and":
        return bool(ev(e[1], env)) and bool(ev(e[2], env))
    if tag == "or":
        return bool(ev(e[1], env)) or bool(ev(e[2], env))
    a, b = ev(e[2], env), ev(e[3], env)
    return {
        "==": a == b, "!=": a != b, "<=": a <= b, ">=": a >= b, "<": a < b, ">": a > b,
        "+": a + b, "-": a - b, "*": a * b,
    }[e[1]]


def _freeze(locs, vals):
    return (tuple(sorted(locs.items())), tuple(sorted(vals.items())))


def _ok_inv(net, locs, vals):
    env = {"locs": locs, "vals": vals}
    for a in net.automata:
        inv = a.invariant(locs[a.name])
        if inv is not None and not ev(inv, env):
            return False
    return True


def successors(net, frozen):
    locs, vals = dict(frozen[0]), dict(frozen[1])
    env = {"locs": locs, "vals": vals}
    out = []
    dv = dict(vals)
    for c, b in net.clocks:
        dv[c] = min(vals[c] + 1, b)
    if _ok_inv(net, locs, dv):
        out.append(_freeze(locs, dv))
    moves = []
    for a in net.automata:
        for e in a.edges:
            if e.source != locs[a.name] or (e.guard is not None and not ev(e.guard, env)):
                continue
            if e.sync is None:
                moves.append([(a, e)])
            elif e.sync[1] == "!":
                for b in net.automata:
                    if b is a:
                        continue
                    for r in b.edges:
                        if (r.source == locs[b.name] and r.sync == (e.sync[0], "?")
                                and (r.guard is None or ev(r.guard, env))):
                            moves.append([(a, e), (b, r)])
    bounds = dict(net.clocks)
    for move in moves:
        nl, nv = dict(locs), dict(vals)
        legal = True
        for a, e in move:
            for name, expr in e.updates:
                nv[name] = ev(expr, {"locs": nl, "vals": nv})
            nl[a.name] = e.target
        for v in net.variables:
            legal &= v.low <= nv[v.name] <= v.high
        for c, b in bounds.items():
            legal &= 0 <= nv[c] <= b
        if legal and _ok_inv(net, nl, nv):
            out.append(_freeze(nl, nv))
    return out


def oracle(net, query):
    """Return (answer, shortest witness length or None).

    ``answer`` is True for a reachable E<> target and for an A[] that holds.
    """
    locs = {a.name: a.initial for a in net.automata}
    vals = {v.name: v.init for v in net.variables}
    vals.update({c: 0 for c, _ in net.clocks})
    start = _freeze(locs, vals)

    def sat(s):
        r = bool(ev(query.predicate, {"locs": dict(s[0]), "vals": dict(s[1])}))
        return r if query.kind == EXISTS else not r

    dist = {start: 1}
    todo = deque([start])
    while todo:
        s = todo.popleft()
        if sat(s):
            return (query.kind == EXISTS, dist[s])
        for t in successors(net, s):
            if t not in dist:
                dist[t] = dist[s] + 1
                todo.append(t)
    return (query.kind != EXISTS, None)


def random_network(rng: random.Random):
    """A random network with <=3 automata, <=6 locations and clock bounds <=10."""
    n_auto = rng.randint(1, 3)
    chans = ["c0", "c1"]
    lines = []
    clocks = []
    for i in range(rng.randint(1, 2)):
        bound = rng.randint(1, 10)
        clocks.append((f"x{i}", bound))
        lines.append(f"clock x{i} {bound}")
    lines.append("var n 0 3 0")
    lines.append("chan " + " ".join(chans))
    autos = []
    for ai in range(n_auto):
        k = rng.randint(1, 6)
        locs = [f"l{j}" for j in range(k)]
        autos.append((f"a{ai}", locs))
        lines.append(f"automaton a{ai}")
        for l in locs:
            if rng.random() < 0.3:
                c, b = rng.choice(clocks)
                lines.append(f"  loc {l} inv {c} <= {rng.randint(0, b - 1) if b > 0 else 0}")
            else:
                lines.append(f"  loc {l}")
        lines.append("  init l0")
        for _ in range(rng.randint(0, 8)):
            src, dst = rng.choice(locs), rng.choice(locs)
            guard = []
            if rng.random() < 0.5:
                c, b = rng.choice(clocks)
                op = rng.choice(["<", "<=", ">=", ">", "=="])
                k_ = rng.randint(0, b) if op in ("<", ">=") else rng.randint(0, max(b - 1, 0))
                guard.append(f"{c} {op} {k_}")
            if rng.random() < 0.4:
                guard.append(f"n {rng.choice(['<', '==', '>=', '!='])} {rng.randint(0, 3)}")
            upd = []
            if rng.random() < 0.5:
                upd.append(f"{rng.choice(clocks)[0]} = 0")
            if rng.random() < 0.4:
                upd.append(rng.choice(["n = 3 - n", "n = 0", "n = n * 0 + 2"]))
            sync = ""
            if rng.random() < 0.4:
                sync = rng.choice("!?") + rng.choice(chans)
            text = f"  edge {src} -> {dst}"
            if guard:
                text += " [" + " && ".join(guard) + "]"
            if upd:
                text += " {" + ", ".join(upd) + "}"
            lines.append(text + (" " + sync if sync else ""))
        lines.append("end")
    net = parse_network("\n".join(lines) + "\n")
    return net, autos, clocks


def random_query(rng: random.Random, net, autos, clocks):
    atoms = []
    for _ in range(rng.randint(1, 3)):
        r = rng.random()
        if r < 0.5:
            a, locs = rng.choice(autos)
            atoms.append(f"{a}.{rng.choice(locs)}")
        elif r < 0.8:
            atoms.append(f"n {rng.choice(['==', '>=', '<'])} {rng.randint(0, 3)}")
        else:
            c, b = rng.choice(clocks)
            atoms.append(f"{c} {rng.choice(['>=', '<'])} {rng.randint(0, b)}")
    pred = atoms[0]
    for a in atoms[1:]:
        pred = f"{pred} {rng.choice(['&&', '||'])} {'not ' if rng.random() < 0.2 else ''}{a}"
    kind = rng.choice(["E<>", "A[]"])
    return parse_query(f"{kind} {pred}", net)
