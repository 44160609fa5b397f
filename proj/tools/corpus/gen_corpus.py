#!/usr/bin/env python3
"""Writes the parameterised models of the corpus under models/.

Every implementation `<model>_<params>.gcl` gets a nominal companion
`<model>_<params>_nominal.gcl` (the same program without its faulty
actions) unless a shared `<model>_nominal.gcl` already covers it.

Usage: gen_corpus.py [models-dir]
"""

import argparse
import itertools
import math
import pathlib


def majority(literals):
    """Disjunction over every majority-sized subset of the literals."""
    need = len(literals) // 2 + 1
    terms = ["(" + " && ".join(c) + ")" for c in itertools.combinations(literals, need)]
    return " || ".join(terms)


def memory(bits):
    cells = [f"c{k}" for k in range(bits)]
    lines = ["Process Memory {",
             "\tw: BOOL; // the last value written",
             "\tr: BOOL; // the value we can read from the memory"]
    lines += [f"\t{c}: BOOL;" for c in cells]
    lines.append("\tInitial: w && " + " && ".join(cells) + " && r;")
    lines.append("\tNormative: " + " && ".join(f"c0 == {c}" for c in cells[1:]) + " && w == r;")
    lines.append("\t[write] true -> w = !w, " + ", ".join(f"{c} = !{c}" for c in cells) + ", r = !r;")
    lines.append("\t[read0] !r -> r = r;")
    lines.append("\t[read1] r -> r = r;")
    for k, c in enumerate(cells):
        flipped = [f"!{x}" if x == c else x for x in cells]
        lines.append(f"\t[fail{k + 1}] faulty true -> {c} = !{c}, r = {majority(flipped)};")
    lines += ["}", "", "Main() {", "\tm1: Memory;", "\trun m1();", "}", ""]
    return "\n".join(lines)


def nmr(modules):
    inputs = [f"i{k}" for k in range(modules)]
    none = " && ".join(f"!{i}" for i in inputs)
    lines = [f"Global {', '.join(inputs)}: BOOL; // inputs for each module", "",
             "Process Module(out: BOOL) {",
             f"\tInitial: {none};",
             "\tNormative: true;",
             "\t[fail] faulty true -> out = !out;",
             "}", "",
             "Process Voter {",
             f"\tInitial: {none};",
             "\tNormative: true;",
             f"\t[vote] {majority(inputs)} -> i0 = i0; // if majority then skip",
             "}", "",
             "Process Environment {",
             f"\tInitial: {none};",
             "\tNormative: true;",
             "\t[input0] true -> " + ", ".join(f"{i} = false" for i in inputs) + ";",
             "\t[input1] true -> " + ", ".join(f"{i} = true" for i in inputs) + ";",
             "}", "",
             "Main() {"]
    lines += [f"\tm{k}: Module;" for k in range(modules)]
    lines += ["\tv0: Voter;", "\te0: Environment;"]
    lines += [f"\trun m{k}({i});" for k, i in enumerate(inputs)]
    lines += ["\trun v0();", "\trun e0();", "}", ""]
    return "\n".join(lines)


PHIL_BODY = """Process OddPhil(forkL: BOOL, forkR: BOOL) {
\ts0, s1: BOOL;
\thasL, hasR: BOOL;
\tInitial: !s0 && !s1 && !hasL && !hasR && forkR && forkL;
\tNormative: !(hasR && !hasL);
\t[hungry] !s0 && !s1 -> s1 = true;
\t[getLeft] !s0 && s1 && forkL && !hasL && !hasR -> forkL = false, hasL = true;
\t[getRight] !s0 && s1 && hasL && forkR && !hasR -> forkR = false, hasR = true;
\t[eating] !s0 && s1 && hasL && hasR -> s1 = false, s0 = true;
\t[thinking] s0 && !s1 -> s0 = false, forkL = true, forkR = true, hasR = false, hasL = false;
}

Process EvenPhil(forkL: BOOL, forkR: BOOL) {
\ts0, s1: BOOL;
\thasL, hasR: BOOL;
\tInitial: !s0 && !s1 && !hasL && !hasR && forkR && forkL;
\tNormative: !(hasL && !hasR);
\t[hungry] !s0 && !s1 -> s1 = true;
\t[getRight] !s0 && s1 && forkR && !hasL && !hasR -> forkR = false, hasR = true;
\t[getLeft] !s0 && s1 && hasR && forkL && !hasL -> forkL = false, hasL = true;
\t[eating] !s0 && s1 && hasL && hasR -> s1 = false, s0 = true;
\t[thinking] s0 && !s1 -> s0 = false, forkL = true, forkR = true, hasR = false, hasL = false;"""


def philosophers(n, faults=True):
    """One odd philosopher (left fork first) and n-1 even ones (right fork
    first). The fault lets an even philosopher grab its left fork first; it
    is named getLeftFirst because an observable getLeft already exists."""
    lines = ["// !s0 !s1 thinking, !s0 s1 hungry, s0 !s1 eating",
             f"Global {', '.join(f'fork{k}' for k in range(n))}: BOOL;", "", PHIL_BODY]
    if faults:
        lines.append("\t[getLeftFirst] faulty !s0 && s1 && !hasR && forkL && !hasL -> forkL = false, hasL = true;")
    lines += ["}", "", "Main() {", "\tphil1: OddPhil;"]
    lines += [f"\tphil{k}: EvenPhil;" for k in range(2, n + 1)]
    lines.append(f"\trun phil1(fork{n - 1}, fork0);")
    lines += [f"\trun phil{k}(fork{k - 2}, fork{k - 1});" for k in range(2, n + 1)]
    lines += ["}", ""]
    return "\n".join(lines)


def byzantine(n, faults=True):
    """A commander and n-1 lieutenants. Each lieutenant forwards the order it
    received (a traitor forwards the opposite one) and decides by majority
    once it has heard from every other lieutenant."""
    lts = list(range(2, n + 1))
    lines = [f"Global {', '.join(f'g1g{k}A' for k in lts)}: BOOL; // commander attack orders",
             f"Global {', '.join(f'g1g{k}R' for k in lts)}: BOOL; // commander retreat orders"]
    for k in lts:
        others = [j for j in lts if j != k]
        sent = [f"g{k}g{j}A" for j in others] + [f"g{k}g{j}R" for j in others]
        lines.append(f"Global {', '.join(sent)}: BOOL; // forwarded by g{k}")
    lines.append(f"Global {', '.join(f'A{k}' for k in lts)}: BOOL; // attack decisions")
    lines.append(f"Global {', '.join(f'R{k}' for k in lts)}: BOOL; // retreat decisions")
    globals_ = [f"g1g{k}{x}" for x in "AR" for k in lts]
    globals_ += [f"g{k}g{j}{x}" for k in lts for j in lts if j != k for x in "AR"]
    globals_ += [f"{x}{k}" for x in "AR" for k in lts]

    lines += ["", "Process Commander {", "\ts0, s1: BOOL;",
              "\tInitial: s0 && !s1 && " + " && ".join(f"!{g}" for g in globals_) + ";",
              "\tNormative: true;",
              "\t[sA] s0 -> " + ", ".join(f"g1g{k}A = true" for k in lts) + ", s0 = false, s1 = true;",
              "\t[sR] s0 -> " + ", ".join(f"g1g{k}R = true" for k in lts) + ", s0 = false, s1 = true;",
              "\t[wait] s1 -> s1 = true;",
              "}", ""]

    m = n - 2
    fa = [f"fw{j}A" for j in range(1, m + 1)]
    fr = [f"fw{j}R" for j in range(1, m + 1)]
    ra = [f"a{j}" for j in range(1, m + 1)]
    rr = [f"r{j}" for j in range(1, m + 1)]
    params = ["attack", "retreat"] + fa + fr + ra + rr + ["dA", "dR"]
    heard = " && ".join(f"({a} || {r})" for a, r in zip(ra, rr))
    lines += [f"Process Lieutenant({', '.join(p + ': BOOL' for p in params)}) {{",
              "\t// attack/retreat: order from the commander; fw*: messages to the other",
              "\t// lieutenants; a*/r*: messages from them; dA/dR: the decision",
              "\ts0, s1, s2, isBetrayer: BOOL;",
              "\tInitial: s0 && !s1 && !s2 && !isBetrayer;",
              "\tNormative: true;",
              f"\t[fA] s0 && attack && !isBetrayer -> {', '.join(f + ' = true' for f in fa)}, s0 = false, s1 = true;",
              f"\t[fR] s0 && retreat && !isBetrayer -> {', '.join(f + ' = true' for f in fr)}, s0 = false, s1 = true;",
              f"\t[fA] s0 && attack && isBetrayer -> {', '.join(f + ' = true' for f in fr)}, s0 = false, s1 = true;",
              f"\t[fR] s0 && retreat && isBetrayer -> {', '.join(f + ' = true' for f in fa)}, s0 = false, s1 = true;"]
    if faults:
        lines.append("\t[Betray] faulty s0 && !isBetrayer -> isBetrayer = true;")
    lines += [f"\t[Attack] s1 && {heard} && ({majority(['attack'] + ra)}) -> s1 = false, s2 = true, dA = true;",
              f"\t[Retreat] s1 && {heard} && ({majority(['retreat'] + rr)}) -> s1 = false, s2 = true, dR = true;",
              "}", "", "Main() {", "\tg1: Commander;"]
    lines += [f"\tg{k}: Lieutenant;" for k in lts]
    lines.append("\trun g1();")
    for k in lts:
        others = [j for j in lts if j != k]
        args = [f"g1g{k}A", f"g1g{k}R"] + [f"g{k}g{j}A" for j in others] + [f"g{k}g{j}R" for j in others]
        args += [f"g{j}g{k}A" for j in others] + [f"g{j}g{k}R" for j in others] + [f"A{k}", f"R{k}"]
        lines.append(f"\trun g{k}({', '.join(args)});")
    lines += ["}", ""]
    return "\n".join(lines)


def _width(value):
    return max(1, math.ceil(math.log2(value + 1)))


def _is(prefix, width, value):
    return [f"{prefix}{b}" if (value >> b) & 1 else f"!{prefix}{b}" for b in range(width)]


def _set(prefix, width, value):
    return [f"{prefix}{b} = {'true' if (value >> b) & 1 else 'false'}" for b in range(width)]


BRP_RECEIVER = """Process Receiver {
\tr0, r1, r2: BOOL; // newfile(000), fstsafe(001), framereceived(010), framereported(011), idle(100), finish(101)
\trrep0, rrep1, rrep2: BOOL; // bottom(000), fst(001), inc(010), ok(011), nok(100)
\tfr, lr, br, rab, recv: BOOL;
\tInitial: !r0 && !r1 && !r2 && !rrep0 && !rrep1 && !rrep2 && !fr && !lr && !br && !rab && !recv;
\tNormative: true;

\t// new_file
\t[receiveFirstChunk] !r0 && !r1 && !r2 && flagK && !flagL -> r2 = true, fr = fs, lr = ls, br = bs, recv = true, flagK = false;

\t// fst_safe_frame
\t[e] !r0 && !r1 && r2 && !flagL -> r1 = true, r2 = false, rab = br;

\t// frame_received
\t[setIndication] !r0 && r1 && !r2 && rab == br && fr && lr && !flagL -> r2 = true, rrep0 = true, rrep1 = true, rrep2 = false;
\t[setIndication] !r0 && r1 && !r2 && rab == br && fr && !lr && !flagL -> r2 = true, rrep0 = true, rrep1 = false, rrep2 = false;
\t[setIndication] !r0 && r1 && !r2 && rab == br && !fr && !lr && !flagL -> r2 = true, rrep0 = false, rrep1 = true, rrep2 = false;
\t[setIndication] !r0 && r1 && !r2 && rab == br && !fr && lr && !flagL -> r2 = true, rrep0 = true, rrep1 = true, rrep2 = false;
\t[sendAck] !r0 && r1 && !r2 && !(rab == br) && !flagL -> r0 = true, r1 = false, flagL = true;

\t// frame_reported
\t[sendAck] !r0 && r1 && r2 && !flagL && !lr -> r0 = true, r1 = false, r2 = false, rab = !rab, flagL = true;
\t[sendAck] !r0 && r1 && r2 && !flagL && lr -> r0 = true, r1 = false, r2 = true, rab = !rab, flagL = true;

\t// idle
\t[receiveChunk] r0 && !r1 && !r2 && flagK && !flagL -> r0 = false, r1 = true, fr = fs, lr = ls, br = bs, recv = true, flagK = false;

\t// finish
\t[restart] r0 && !r1 && r2 -> r1 = false, r2 = false;
}

Main() {
\ts: Sender;
\tr: Receiver;
\trun s();
\trun r();
}
"""


def brp(chunks, limit, faults=True):
    """Bounded retransmission of a file of `chunks` chunks, at most `limit`
    retransmissions per chunk; the fault loses a frame in transit."""
    rw = _width(limit)
    cw = _width(chunks - 1)
    index = (lambda c: _is("i", cw, c)) if chunks > 1 else (lambda c: [])
    set_index = (lambda c: _set("i", cw, c)) if chunks > 1 else (lambda c: [])
    rt = [f"rt{b}" for b in range(rw)]

    lines = [f"// {chunks} chunk(s), at most {limit} retransmission(s) of each",
             "Global fs, ls, bs: BOOL;",
             "Global flagK, flagL: BOOL;",
             "",
             "Process Sender {",
             "\ts0, s1, s2: BOOL; // idle(000), nextframe(001), waitack(010), retransmit(011), success(100), error(101)",
             "\tsrep0, srep1: BOOL; // bottom(00), nok(01), dk(10), ok(11)",
             "\tsab: BOOL;",
             f"\t{', '.join(rt)}: BOOL; // retransmissions of the current chunk"]
    if chunks > 1:
        lines.append(f"\t{', '.join(f'i{b}' for b in range(cw))}: BOOL; // the current chunk")
    init = ["!s0", "!s1", "!s2", "!srep0", "!srep1", "!sab", "!fs", "!ls", "!bs", "!flagK", "!flagL"]
    init += [f"!{r}" for r in rt] + [f"!i{b}" for b in range(cw) if chunks > 1]
    lines += ["\tInitial: " + " && ".join(init) + ";", "\tNormative: true;", "",
              "\t// idle",
              "\t[NewFile] !s0 && !s1 && !s2 -> s2 = true, srep0 = false, srep1 = false;", "",
              "\t// next frame"]

    def send(c, internal, guard, counter):
        first = "true" if c == 0 else "false"
        last = "true" if c == chunks - 1 else "false"
        kind = "internal " if internal else ""
        upd = ["s1 = true", "s2 = false"] if not internal else ["s2 = false"]
        upd += [f"fs = {first}", f"ls = {last}", "bs = sab"] + counter + ["flagK = true"]
        return f"\t[sendChunk] {kind}{' && '.join(guard + index(c))} -> {', '.join(upd)};"

    for c in range(chunks):
        lines.append(send(c, False, ["!s0", "!s1", "s2", "!flagK"], _set("rt", rw, 0)))
    lines += ["", "\t// wait ack"]
    for c in range(chunks):
        guard = ["!s0", "s1", "!s2", "!flagK", "flagL"] + index(c)
        if c == chunks - 1:
            upd = ["s0 = true", "s1 = false"] + set_index(0)
        else:
            upd = ["s1 = false", "s2 = true"] + set_index(c + 1)
        lines.append(f"\t[receiveAck] {' && '.join(guard)} -> {', '.join(upd + ['sab = !sab', 'flagL = false'])};")
    if faults:
        lines.append("\t[TOMsg] faulty !s0 && s1 && !s2 && flagK -> s2 = true, flagK = false;")
    lines += ["", "\t// retransmit"]
    for r in range(limit):
        for c in range(chunks):
            lines.append(send(c, True, ["!s0", "s1", "s2", "!flagK"] + _is("rt", rw, r), _set("rt", rw, r + 1)))
    exhausted = " && ".join(["!s0", "s1", "s2"] + _is("rt", rw, limit))
    lines += [f"\t[error] internal {exhausted} -> s0 = true, s1 = false, srep0 = false, srep1 = true;",
              f"\t[error] internal {exhausted} -> s0 = true, s1 = false, srep0 = true, srep1 = false;",
              "", "\t// success",
              "\t[success] s0 && !s1 && !s2 -> s0 = false, srep0 = true, srep1 = true;",
              "", "\t// error",
              f"\t[restart] s0 && !s1 && s2 -> {', '.join(['s0 = false', 's2 = false'] + set_index(0))};",
              "}", "", BRP_RECEIVER]
    return "\n".join(lines)


def write(root, relative, text):
    path = root / relative
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def main():
    parser = argparse.ArgumentParser(description="Write the generated corpus models.")
    parser.add_argument("root", nargs="?", default="models", type=pathlib.Path)
    root = parser.parse_args().root
    for bits in (5, 7, 9):
        write(root, f"memory/memory_{bits}.gcl", memory(bits))
    for modules in (5, 7, 9):
        write(root, f"nmr/nmr_{modules}.gcl", nmr(modules))
    for n in (2, 3, 4, 5):
        write(root, f"philosophers/philosophers_{n}.gcl", philosophers(n))
        write(root, f"philosophers/philosophers_{n}_nominal.gcl", philosophers(n, faults=False))
    for n in (3, 4):
        write(root, f"byzantine/byzantine_{n}.gcl", byzantine(n))
        write(root, f"byzantine/byzantine_{n}_nominal.gcl", byzantine(n, faults=False))
    for chunks in (1, 3, 5):
        for limit in (1, 3, 5, 7):
            write(root, f"brp/brp_{chunks}_{limit}.gcl", brp(chunks, limit))
            write(root, f"brp/brp_{chunks}_{limit}_nominal.gcl", brp(chunks, limit, faults=False))


if __name__ == "__main__":
    main()
