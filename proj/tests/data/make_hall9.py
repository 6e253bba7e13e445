#!/usr/bin/env python3
"""Writes hall9.txt: the Hall plane of order 9 as an incidence file.

The plane is coordinatized by the Hall quasifield of order 9 built on
GF(3)^2 with f(x) = x^2 + 1 (irreducible over GF(3)). Affine lines are
y = x*m + k and x = c; the q+1 points at infinity are the slopes plus (inf).
The script checks the projective-plane axioms and that the quasifield is not
a field (so the plane is not Desarguesian) before writing.
"""
import itertools
import sys

P = 3
R, S = 0, 2  # f(x) = x^2 - R x - S = x^2 + 1 over GF(3)


def f(c):
    return (c * c - R * c - S) % P


def qmul(x, y):
    a, b = x
    c, d = y
    if d == 0:
        return ((a * c) % P, (b * c) % P)
    dinv = pow(d, P - 2, P)
    return ((a * c - b * dinv * f(c)) % P, (a * d - b * c + R * b) % P)


def qadd(x, y):
    return ((x[0] + y[0]) % P, (x[1] + y[1]) % P)


elems = [(a, b) for a in range(P) for b in range(P)]
eid = {e: i for i, e in enumerate(elems)}
q = len(elems)


def affine(x, y):
    return eid[x] * q + eid[y]


def slope_point(m):
    return q * q + eid[m]


INF = q * q + q
lines = []
for m in elems:
    for k in elems:
        pts = [affine(x, qadd(qmul(x, m), k)) for x in elems] + [slope_point(m)]
        lines.append(sorted(pts))
for c in elems:
    lines.append(sorted([affine(c, y) for y in elems] + [INF]))
lines.append(sorted([slope_point(m) for m in elems] + [INF]))

v = q * q + q + 1
assert len(lines) == v
seen = set()
for line in lines:
    assert len(line) == q + 1 and len(set(line)) == q + 1
    for a, b in itertools.combinations(line, 2):
        assert (a, b) not in seen, "two lines share a pair"
        seen.add((a, b))
assert len(seen) == v * (v - 1) // 2

# A Desarguesian plane only admits fields as coordinate rings; this one is a
# nearfield (associative, but only one distributive law holds).
left_dist = all(
    qmul(x, qadd(y, z)) == qadd(qmul(x, y), qmul(x, z)) for x in elems for y in elems for z in elems
)
assert not left_dist, "quasifield is a field; plane would be Desarguesian"

out = sys.argv[1] if len(sys.argv) > 1 else "hall9.txt"
with open(out, "w") as fh:
    fh.write("# Hall plane of order 9 (generated by make_hall9.py)\n")
    fh.write(f"plane {v} {v} {q}\n")
    for line in lines:
        fh.write(" ".join(map(str, line)) + "\n")
