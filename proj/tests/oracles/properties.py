#!/usr/bin/env python3
"""Scalar reference values for the fluid property correlations.

Reads component data straight from the deck files (own minimal parser),
evaluates every correlation in 50-digit arithmetic and writes a JSON list of
cases. The C++ side evaluates the same cases through the library and compares.

usage: properties.py OUT.json DECK...
"""

import json
import sys
from pathlib import Path

import mpmath as mp

mp.mp.dps = 50

RANKINE = mp.mpf("459.67")
R_PSI = mp.mpf("10.7316")
R_BTU = mp.mpf("1.9859")


def parse(path):
    comps, order, reactions = {}, [], []
    ref = (mp.mpf("14.7"), mp.mpf("77"))
    current = None
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].split()
        if not line or not line[0].startswith("*"):
            continue
        key, vals = line[0][1:], line[1:]
        num = lambda i: mp.mpf(vals[i])
        if key == "REFCOND":
            ref = (num(0), num(1))
        elif key == "COMP":
            c = dict(name=vals[0], cls=vals[1], M=num(2), pc=mp.mpf(0), tc=mp.mpf(0),
                     rho=mp.mpf(0), cp=mp.mpf(0), ct1=mp.mpf(0), ct2=mp.mpf(0), cpt=mp.mpf(0),
                     kv=[mp.mpf(0)] * 5, avisc=mp.mpf(0), bvisc=mp.mpf(0), avg=mp.mpf(0),
                     bvg=mp.mpf(0), cpg=[mp.mpf(0)] * 4, hvr=mp.mpf(0), ev=mp.mpf(0))
            if len(vals) >= 5:
                c["pc"], c["tc"] = num(3), num(4)
            comps[vals[0]] = c
            order.append(vals[0])
        elif key == "KV":
            comps[vals[0]]["kv"] = [mp.mpf(v) for v in vals[1:6]]
        elif key == "DENS":
            c = comps[vals[0]]
            names = ["rho", "cp", "ct1", "ct2", "cpt"]
            for i, v in enumerate(vals[1:]):
                c[names[i]] = mp.mpf(v)
        elif key == "VISL":
            comps[vals[0]]["avisc"], comps[vals[0]]["bvisc"] = num(1), num(2)
        elif key == "VISG":
            comps[vals[0]]["avg"], comps[vals[0]]["bvg"] = num(1), num(2)
        elif key == "CPG":
            cp = [mp.mpf(v) for v in vals[1:]]
            comps[vals[0]]["cpg"] = cp + [mp.mpf(0)] * (4 - len(cp))
        elif key == "HVAP":
            comps[vals[0]]["hvr"], comps[vals[0]]["ev"] = num(1), num(2)
        elif key == "REACTION":
            current = dict(name=vals[0])
            reactions.append(current)
        elif key == "RATE" and current is not None:
            current["A"], current["Ea"], current["H"] = num(0), num(1), num(2)
    return comps, order, reactions, ref


def k_value(c, p, t):
    kv1, kv2, kv3, kv4, kv5 = c["kv"]
    return (kv1 / p + kv2 * p + kv3) * mp.exp(kv4 / (t - kv5))


def z_factor(comps, vol, y, p, t):
    a = b = mp.mpf(0)
    for name, yi in zip(vol, y):
        c = comps[name]
        tc = c["tc"] + RANKINE
        a += yi * mp.sqrt(tc ** mp.mpf("2.5") / c["pc"])
        b += yi * tc / c["pc"]
    tcm = (a * a / b) ** (mp.mpf(2) / 3)
    pcm = tcm / b
    tr = t + RANKINE
    pr = p / pcm
    A = mp.mpf("0.427480") * pr * (tcm / tr) ** mp.mpf("2.5")
    B = mp.mpf("0.086640") * pr * (tcm / tr)
    roots = mp.polyroots([1, -1, A - B - B * B, -A * B], maxsteps=200, extraprec=200)
    real = [mp.re(r) for r in roots if abs(mp.im(r)) < mp.mpf("1e-30")]
    return max(real)


def liquid_density(c, p, t, ref):
    dp, dt = p - ref[0], t - ref[1]
    return c["rho"] * mp.exp(c["cp"] * dp - c["ct1"] * dt - c["ct2"] * dt * dt / 2 + c["cpt"] * dp * dt)


def gas_h(c, t, tref):
    g = c["cpg"]
    return sum(g[k] / (k + 1) * (t ** (k + 1) - tref ** (k + 1)) for k in range(4))


def hvap(c, t):
    d = c["tc"] - t
    if c["hvr"] == 0 or d <= 0:
        return mp.mpf(0)
    return c["hvr"] * d ** c["ev"]


def liquid_visc(c, t):
    return c["avisc"] * mp.exp(c["bvisc"] / (t + RANKINE))


def gas_visc(c, t):
    return c["avg"] * (t + RANKINE) ** c["bvg"]


def cases_for(deck):
    comps, order, reactions, ref = parse(deck)
    tag = Path(deck).stem
    water = [n for n in order if comps[n]["cls"] == "water"]
    oil = [n for n in order if comps[n]["cls"] == "oil"]
    gas = [n for n in order if comps[n]["cls"] == "gas"]
    vol = water + oil + gas
    out = []

    def add(kind, value, **inputs):
        inputs = {k: (float(v) if isinstance(v, mp.mpf) else v) for k, v in inputs.items()}
        out.append(dict(deck=tag, kind=kind, value=float(value), **inputs))

    pts = [(mp.mpf(p), mp.mpf(t)) for p in ("14.7", "65", "2014.7") for t in ("100", "350", "900")]
    for name in water + oil:
        c = comps[name]
        for p, t in pts:
            add("k_value", k_value(c, p, t), comp=name, p=p, T=t)
            add("liquid_density", liquid_density(c, p, t, ref), comp=name, p=p, T=t)
        for t in (mp.mpf("100"), mp.mpf("350"), mp.mpf("900")):
            add("liquid_viscosity", liquid_visc(c, t), comp=name, T=t)
            add("vaporization_enthalpy", hvap(c, t), comp=name, T=t)
            add("liquid_enthalpy", gas_h(c, t, ref[1]) - hvap(c, t), comp=name, T=t)
    for name in vol:
        c = comps[name]
        for t in (mp.mpf("100"), mp.mpf("350"), mp.mpf("900")):
            add("gas_component_enthalpy", gas_h(c, t, ref[1]), comp=name, T=t)
            add("gas_component_viscosity", gas_visc(c, t), comp=name, T=t)

    # oil mixtures, x over the oil components in deck order
    xs = [[mp.mpf(1) / len(oil)] * len(oil), [mp.mpf("0.744"), mp.mpf("0.256")][: len(oil)]]
    for x in xs:
        if len(x) != len(oil):
            continue
        for p, t in pts:
            inv = sum(xi / liquid_density(comps[n], p, t, ref) for n, xi in zip(oil, x))
            add("oil_density", 1 / inv, x=[float(v) for v in x], p=p, T=t)
        for t in (mp.mpf("100"), mp.mpf("350"), mp.mpf("900")):
            lg = sum(xi * mp.log(liquid_visc(comps[n], t)) for n, xi in zip(oil, x))
            add("oil_viscosity", mp.exp(lg), x=[float(v) for v in x], T=t)
            h = sum(xi * (gas_h(comps[n], t, ref[1]) - hvap(comps[n], t)) for n, xi in zip(oil, x))
            add("oil_enthalpy", h, x=[float(v) for v in x], T=t)

    # gas mixtures, y over volatiles (water, oils, gases)
    def gas_mix(pairs):
        y = [mp.mpf(0)] * len(vol)
        for n, v in pairs:
            y[vol.index(n)] = mp.mpf(v)
        return y

    mixes = [gas_mix([(gas[0], "1")])]
    if len(gas) > 1:
        mixes.append(gas_mix([(gas[0], "0.21"), (gas[1], "0.79")]))
    mixes.append(gas_mix([(water[0], "0.3"), (oil[0], "0.05"), (oil[-1], "0.01")] +
                         [(g, str(mp.mpf("0.64") / len(gas))) for g in gas]))
    gpts = [(mp.mpf(p), mp.mpf(t)) for p in ("65", "2014.7", "5000") for t in ("100", "500", "1000")]
    gpts.append((mp.mpf("65"), mp.mpf("200")))
    for y in mixes:
        yl = [float(v) for v in y]
        for p, t in gpts:
            z = z_factor(comps, vol, y, p, t)
            add("z_factor", z, y=yl, p=p, T=t)
            add("gas_density", p / (z * R_PSI * (t + RANKINE)), y=yl, p=p, T=t)
        for t in (mp.mpf("100"), mp.mpf("500"), mp.mpf("1000")):
            w = [mp.sqrt(comps[n]["M"]) for n in vol]
            num = sum(gas_visc(comps[n], t) * yi * wi for n, yi, wi in zip(vol, y, w))
            den = sum(yi * wi for yi, wi in zip(y, w))
            add("gas_viscosity", num / den, y=yl, T=t)
            add("gas_enthalpy", sum(yi * gas_h(comps[n], t, ref[1]) for n, yi in zip(vol, y)),
                y=yl, T=t)

    for r in reactions:
        for t in (mp.mpf("200"), mp.mpf("600"), mp.mpf("1000")):
            k = r["A"] * mp.exp(-r["Ea"] / (R_BTU * (t + RANKINE)))
            add("arrhenius", k, reaction=r["name"], T=t)
    return out


def main():
    out_path, decks = sys.argv[1], sys.argv[2:]
    cases = []
    for d in decks:
        cases += cases_for(d)
    Path(out_path).parent.mkdir(parents=True, exist_ok=True)
    Path(out_path).write_text(json.dumps({"cases": cases}, indent=1) + "\n")
    print(f"{len(cases)} cases -> {out_path}")


if __name__ == "__main__":
    main()
