"""Command-line front end: ``tessellata <command> <action> [options]``."""

from __future__ import annotations

import argparse
import dataclasses
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import geometry, isorhythm, phase, pitch, rhythm, score, svg, timeline
from .config import Config, load_config
from .errors import DomainError, ParseError, SearchLimitError, TessellataError
from .midi import write_midi


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _residues(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _rationals(text: str) -> list[Fraction]:
    try:
        return [Fraction(x) for x in text.split(",") if x.strip() != ""]
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _ranges(elements) -> str:
    """``0,1,2,5,6`` -> ``0..2, 5..6``."""
    out = []
    elements = list(elements)
    i = 0
    while i < len(elements):
        j = i
        while j + 1 < len(elements) and elements[j + 1] == elements[j] + 1:
            j += 1
        out.append(str(elements[i]) if i == j else f"{elements[i]}..{elements[j]}")
        i = j + 1
    return ", ".join(out) if out else "(empty)"


def _emit(text: str, out: str | None, binary: bytes | None = None):
    if out is None or out == "-":
        if binary is not None:
            sys.stdout.buffer.write(binary)
        else:
            sys.stdout.write(text)
        return
    path = Path(out)
    if binary is not None:
        path.write_bytes(binary)
    else:
        path.write_text(text, encoding="utf-8")
    print(f"wrote {path}", file=sys.stderr)


def _with_velocity(s: score.Score, cfg: Config) -> score.Score:
    if cfg.velocity == score.DEFAULT_VELOCITY:
        return s
    return dataclasses.replace(
        s, events=tuple(dataclasses.replace(e, velocity=cfg.velocity) for e in s.events)
    )


def _save_score(s: score.Score, out: str | None):
    if out:
        _emit("", out, score.write_score(s))


# -- tile -----------------------------------------------------------------------


def _canon_from_args(args) -> rhythm.CanonSpec:
    if args.file:
        return rhythm.parse_canon(Path(args.file).read_text(encoding="utf-8"))
    if args.n is None or args.motif is None:
        raise DomainError("give --file, or --n and --motif")
    n = args.n
    if n <= 0:
        raise DomainError("modulus must be positive")
    motifs = {"R": rhythm.ResidueSet(n, tuple(args.motif))}
    motifs["Rp"] = rhythm.ResidueSet(n, tuple(args.motif_alt))
    if not args.entries:
        raise DomainError("give --entries, e.g. R@1,R@2,Rp@5")
    voices = []
    for i, item in enumerate(args.entries.split(","), 1):
        name, sep, offset = item.strip().partition("@")
        if not sep:
            raise DomainError(f"entry {item!r} must look like NAME@OFFSET")
        if name not in motifs:
            raise DomainError(f"entry {item!r} uses motif {name!r}; known: {', '.join(motifs)}")
        try:
            t = int(offset)
        except ValueError:
            raise DomainError(f"entry {item!r} has a non-integer offset") from None
        voices.append(rhythm.VoiceEntry(motifs[name], t, f"Voice {i}"))
    return rhythm.CanonSpec(n, tuple(voices))


def cmd_tile_verify(args, cfg):
    spec = _canon_from_args(args)
    prof = rhythm.coverage(spec)
    print(f"modulus = {spec.modulus}")
    print("Voice    Motif used    Entry    Onsets")
    for v in spec.voices:
        print(f"{v.label:<8} {str(v.motif):<13} {v.offset:<8} {v.onsets()}")
    print(f"support = {_ranges(prof.support.elements)}")
    print(f"counts = {list(prof.counts)}")
    ov = prof.overlaps()
    print("overlaps = {" + ", ".join(f"{r}: {c}" for r, c in ov.items()) + "}")
    total = prof.total
    print(f"cover: {'yes' if prof.is_full() else 'no'}")
    print(f"exact tiling: {'yes' if prof.is_exact() else 'no'} ({total} onsets over {spec.modulus} slots)")
    _save_score(_with_velocity(score.canon_score(spec), cfg), args.score)
    if args.write_canon:
        _emit(rhythm.write_canon(spec), args.write_canon)
    return 0


def _bound(args, cfg) -> int:
    if args.bound is not None:
        return args.bound
    if os.environ.get(rhythm.SEARCH_BOUND_ENV) is not None:
        return rhythm.search_bound()
    return cfg.search_bound


def cmd_tile_search(args, cfg):
    if args.n <= 0:
        raise DomainError("modulus must be positive")
    a = rhythm.ResidueSet(args.n, tuple(args.motif))
    found = rhythm.find_complements(
        a, exact_only=not args.cover, canonical=args.canonical, bound=_bound(args, cfg)
    )
    kind = "minimal covers" if args.cover else "exact complements"
    print(f"A = {a} mod {args.n}: {len(found)} {kind}")
    for b in found:
        flags = []
        if not args.cover and rhythm.is_vuza_canon(a, b):
            flags.append("vuza")
        per = rhythm.period_of(b)
        flags.append(f"period {per}" if per else "aperiodic")
        print(f"{b}  [{', '.join(flags)}]")
    return 0


def cmd_tile_scan(args, cfg):
    bound = _bound(args, cfg)
    if args.max_n > bound:
        raise SearchLimitError(f"modulus {args.max_n} exceeds search bound {bound}")
    print("n    tilings    vuza")
    total_vuza = 0
    for n in range(1, args.max_n + 1):
        stats = rhythm.scan_exact_tilings(n)
        total_vuza += stats.vuza
        print(f"{n:<4} {stats.tilings:<10} {stats.vuza}")
    print(f"vuza canons found: {total_vuza}")
    return 0


def cmd_tile_accents(args, cfg):
    s = rhythm.ResidueSet(args.n, tuple(args.motif))
    print(rhythm.to_accent_vector(s))
    return 0


# -- isorhythm --------------------------------------------------------------------


def cmd_iso_expand(args, cfg):
    if args.file:
        talea, color = isorhythm.parse_isorhythm(Path(args.file).read_text(encoding="utf-8"))
    else:
        talea = isorhythm.Talea(tuple(args.talea))
        color = isorhythm.Color(tuple(args.color))
    events = isorhythm.expand_isorhythm(talea, color, cycles=args.cycles)
    print(f"N = LCM({len(talea)}, {len(color)}) = {isorhythm.cycle_length(talea, color)}")
    print("Step  Pitch (Color)  Duration (Talea)  Onset")
    for e in events:
        print(f"{e.step:<5} {e.pitch:<14} {e.duration:<17} {e.onset}")
    s = _with_velocity(score.isorhythm_score(events), cfg)
    _save_score(s, args.score)
    if args.midi:
        _emit("", args.midi, write_midi(s, cfg.bend_range))
    return 0


# -- phase ------------------------------------------------------------------------


def cmd_phase_schedule(args, cfg):
    if args.onsets is not None:
        if args.cycle is None:
            raise DomainError("--onsets needs --cycle")
        base = phase.ClapPattern.of(args.cycle, args.onsets)
    else:
        base = phase.ClapPattern.from_accents(args.accents)
    sched = phase.process_schedule(base, args.n)
    T = base.cycle_length
    print(f"T = {T}, n = {args.n}")
    print("k    shift    onsets    coincidences")
    for k, p in enumerate(sched):
        shift = Fraction(k, args.n) * T
        onsets = "{" + ", ".join(str(o) for o in p.onsets) + "}"
        print(f"{k:<4} {str(shift):<8} {onsets:<24} {phase.coincidence_count(base, p, args.tolerance)}")
    s = _with_velocity(score.phase_score(sched), cfg)
    _save_score(s, args.score)
    if args.midi:
        _emit("", args.midi, write_midi(s, cfg.bend_range))
    return 0


# -- hat ----------------------------------------------------------------------------


def _figure(name: str):
    if name == "hat":
        return geometry.hat()
    if name == "large-kite":
        return geometry.large_kite()
    raise DomainError(f"unknown figure {name!r}")


def cmd_hat_build(args, cfg):
    poly = _figure(args.figure)
    print(geometry.dump_polygon(poly))
    if args.svg:
        patch = [h.boundary() for h in geometry.three_hexagon_patch()]
        _emit(svg.render_tiling([poly], background=patch), args.svg)
    return 0


def hat_checks():
    """(description, passed) pairs for the Hat and the large kite."""
    from collections import Counter

    from .geometry import SegmentKind as K

    out = []
    for name, poly, edges, area, kinds in (
        ("hat", geometry.hat(), 13, 8, {K.HALF_SIDE: 6, K.FULL_SIDE: 1, K.APOTHEM: 6}),
        ("large kite", geometry.large_kite(), 6, 5,
         {K.HALF_SIDE: 2, K.APOTHEM: 2, K.DOUBLE_APOTHEM: 2}),
    ):
        got_kinds = Counter(geometry.classify_edges(poly))
        got_area = geometry.polygon_area(poly)
        out.append((f"{name}: {len(poly)} edges (want {edges})", len(poly) == edges))
        out.append((f"{name}: edge vectors sum to {geometry.Point.__str__(poly.edge_sum())}",
                    poly.is_closed()))
        out.append((f"{name}: area {got_area} (want {area}√3)", got_area == geometry.ExactCoord(0, area)))
        out.append((
            f"{name}: kinds " + ", ".join(f"{k.value}×{c}" for k, c in sorted(got_kinds.items(), key=lambda x: x[0].value)),
            dict(got_kinds) == kinds,
        ))
    return out


def cmd_hat_check(args, cfg):
    ok = True
    for text, passed in hat_checks():
        print(f"[{'PASS' if passed else 'FAIL'}] {text}")
        ok &= passed
    return 0 if ok else 1


# -- walk ---------------------------------------------------------------------------


def cmd_walk_table(args, cfg):
    which = args.movement.lower()
    if which == "iii":
        print(pitch.movement_iii_table())
        steps = pitch.movement_iii_walk()
        beats = [2 if s.kind is geometry.SegmentKind.HALF_SIDE else 3 for s in steps]
    elif which == "iv":
        print(pitch.movement_iv_table())
        if args.score:
            raise DomainError("Movement IV has no walk rows to export")
        return 0
    elif which == "v":
        print(pitch.movement_v_table())
        steps = pitch.movement_v_walk()
        beats = 6
    else:
        raise DomainError(f"unknown table {args.movement!r}; expected iii, iv or v")
    if args.score:
        s = score.walk_score(steps, beats, anchor_midi=cfg.anchor_for("walk"),
                             title=f"movement {which}")
        _save_score(_with_velocity(s, cfg), args.score)
    return 0


# -- timeline / mosaic ----------------------------------------------------------------


def _entries(args):
    if args.file:
        return timeline.parse_timeline(Path(args.file).read_text(encoding="utf-8"))
    return timeline.paper_sequences()


def cmd_timeline_coverage(args, cfg):
    entries = _entries(args)
    if args.t is not None:
        for t in args.t:
            print(f"T({t}) = {timeline.coverage_count(entries, t)}")
    else:
        print("Instrument  Motive  Start Time(t_i)  Duration(d_i)")
        for e in entries:
            print(f"{e.instrument.capitalize():<11} {e.motif:<7} {str(e.start):<16} {e.duration}")
        print()
        print("t     T(t)")
        for t in timeline.breakpoints(entries):
            print(f"{str(t):<5} {timeline.coverage_count(entries, t)}")
        print(f"integral of T = {timeline.coverage_integral(entries)}")
    if args.overlaps:
        for motif in sorted({e.motif for e in entries}):
            for a, b, (lo, hi) in timeline.motif_overlaps(entries, motif):
                print(f"Overlap({a.instrument}, {b.instrument}, {motif}) = [{lo}, {hi}]")
    if args.score:
        s = score.Score("timeline", tuple(timeline.timeline_to_events(entries)))
        _save_score(_with_velocity(s, cfg), args.score)
    return 0


def cmd_timeline_plot(args, cfg):
    _emit(svg.render_coverage(_entries(args)), args.out)
    return 0


def cmd_mosaic_expand(args, cfg):
    records = timeline.expand_mosaic_part(args.part)
    print(f"Part {args.part}")
    for r in records:
        print(f"{r.role:<6} {r.color}  ({', '.join(map(str, r.matrix))})  {r.measures} measures")
    print(f"total measures = {timeline.total_measures(records)}")
    return 0


# -- render ---------------------------------------------------------------------------


def _read_score(path: str) -> score.Score:
    return score.parse_score(Path(path).read_bytes())


def cmd_render_roll(args, cfg):
    _emit(svg.render_piano_roll(_read_score(args.score_file), colors=cfg.palette), args.out)
    return 0


def cmd_render_midi(args, cfg):
    if not args.out:
        raise DomainError("render midi needs --out")
    _emit("", args.out, write_midi(_read_score(args.score_file), cfg.bend_range))
    return 0


def cmd_render_tiling(args, cfg):
    patch = [h.boundary() for h in geometry.three_hexagon_patch()]
    if args.figure == "hexagons":
        _emit(svg.render_tiling(patch), args.out)
    else:
        _emit(svg.render_tiling([_figure(args.figure)], background=patch), args.out)
    return 0


# -- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="tessellata", description="Musical tilings: canons, isorhythm, phase, the Hat.")
    p.add_argument("--config", help="TOML config file (anchors, velocity, palette, bend range)")
    cmds = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    tile = cmds.add_parser("tile", help="rhythmic tiling canons over Z/n")
    tacts = tile.add_subparsers(dest="action", required=True, parser_class=_Parser)
    v = tacts.add_parser("verify", help="coverage of a canon given as entries or a .canon.txt file")
    v.add_argument("--n", type=int, help="modulus")
    v.add_argument("--motif", type=_residues, help="motif R, e.g. 0,2,5")
    v.add_argument("--motif-alt", type=_residues, default=list(rhythm.R_ALT),
                   help="second motif Rp (default 0,3,5)")
    v.add_argument("--entries", help="voice entries NAME@OFFSET, e.g. R@1,R@2,Rp@5")
    v.add_argument("--file", help="read the canon from a .canon.txt file instead")
    v.add_argument("--score", help="write the canon as a .score.txt file")
    v.add_argument("--write-canon", help="write the canon as a .canon.txt file")
    v.set_defaults(func=cmd_tile_verify)
    s = tacts.add_parser("search", help="complements B of a motif A")
    s.add_argument("--n", type=int, required=True, help="modulus")
    s.add_argument("--motif", type=_residues, required=True, help="motif A, e.g. 0,4,8")
    s.add_argument("--cover", action="store_true", help="minimal covers (overlaps allowed) instead of exact tilings")
    s.add_argument("--canonical", action="store_true", help="one representative per translation class")
    s.add_argument("--bound", type=int, help="largest modulus to search (default 40)")
    s.set_defaults(func=cmd_tile_search)
    sc = tacts.add_parser("scan", help="count exact tilings and Vuza canons for every n up to --max-n")
    sc.add_argument("--max-n", type=int, default=20, help="largest modulus (default 20)")
    sc.add_argument("--bound", type=int, help="largest modulus allowed (default 40)")
    sc.set_defaults(func=cmd_tile_scan)
    ac = tacts.add_parser("accents", help="print the accent vector of a motif")
    ac.add_argument("--n", type=int, required=True, help="modulus")
    ac.add_argument("--motif", type=_residues, required=True, help="onsets, e.g. 0,3,6,8,10")
    ac.set_defaults(func=cmd_tile_accents)

    iso = cmds.add_parser("isorhythm", help="talea/color expansion")
    iacts = iso.add_subparsers(dest="action", required=True, parser_class=_Parser)
    e = iacts.add_parser("expand", help="expand one full talea/color cycle")
    e.add_argument("--talea", type=_residues, default=[2, 1, 1], help="durations (default 2,1,1)")
    e.add_argument("--color", type=_residues, default=[60, 62, 64, 65], help="MIDI pitches (default 60,62,64,65)")
    e.add_argument("--file", help="read talea and color from a key-value file")
    e.add_argument("--cycles", type=int, default=1, help="number of full cycles (default 1)")
    e.add_argument("--score", help="write a .score.txt file")
    e.add_argument("--midi", help="write a .mid file")
    e.set_defaults(func=cmd_iso_expand)

    ph = cmds.add_parser("phase", help="phase-shifting process")
    pacts = ph.add_subparsers(dest="action", required=True, parser_class=_Parser)
    sch = pacts.add_parser("schedule", help="shifted patterns for k = 0..n")
    sch.add_argument("--accents", type=_residues, default=[1, 0, 0, 1, 0, 0, 1, 0, 1, 0, 1, 0],
                     help="accent vector, one beat per entry (default: bulería)")
    sch.add_argument("--onsets", type=_rationals, help="onset times instead of --accents, e.g. 0,3/2,4")
    sch.add_argument("--cycle", type=Fraction, help="cycle length T, required with --onsets")
    sch.add_argument("--n", type=int, default=12, help="subdivisions / cycles (default 12)")
    sch.add_argument("--tolerance", type=Fraction, default=Fraction(0), help="coincidence tolerance in beats")
    sch.add_argument("--score", help="write a .score.txt file (one voice per performer)")
    sch.add_argument("--midi", help="write a .mid file")
    sch.set_defaults(func=cmd_phase_schedule)

    hat = cmds.add_parser("hat", help="exact Hat geometry")
    hacts = hat.add_subparsers(dest="action", required=True, parser_class=_Parser)
    b = hacts.add_parser("build", help="print the outline with exact coordinates")
    b.add_argument("--figure", choices=("hat", "large-kite"), default="hat", help="which outline")
    b.add_argument("--svg", help="also write an SVG drawing")
    b.set_defaults(func=cmd_hat_build)
    c = hacts.add_parser("check", help="verify edge count, closure, area and edge kinds")
    c.set_defaults(func=cmd_hat_check)

    walk = cmds.add_parser("walk", help="pitch walks along outlines")
    wacts = walk.add_subparsers(dest="action", required=True, parser_class=_Parser)
    t = wacts.add_parser("table", help="reproduce a movement table (iii, iv or v)")
    t.add_argument("movement", help="iii, iv or v")
    t.add_argument("--score", help="write the walk as a .score.txt file (iii and v)")
    t.set_defaults(func=cmd_walk_table)

    tl = cmds.add_parser("timeline", help="motif-entry timelines")
    tacts2 = tl.add_subparsers(dest="action", required=True, parser_class=_Parser)
    cov = tacts2.add_parser("coverage", help="evaluate the coverage count T(t)")
    cov.add_argument("--file", help="timeline file with entry blocks (default: the three-instrument model)")
    cov.add_argument("--t", type=Fraction, action="append", help="time to evaluate; repeatable")
    cov.add_argument("--overlaps", action="store_true", help="list same-motif overlaps between instruments")
    cov.add_argument("--score", help="write the entries as a .score.txt file")
    cov.set_defaults(func=cmd_timeline_coverage)
    plot = tacts2.add_parser("plot", help="SVG strip chart of T(t)")
    plot.add_argument("--file", help="timeline file (default: the three-instrument model)")
    plot.add_argument("--out", help="output .svg (default stdout)")
    plot.set_defaults(func=cmd_timeline_plot)

    mos = cmds.add_parser("mosaic", help="Nasrid-mosaic part encoding")
    macts = mos.add_subparsers(dest="action", required=True, parser_class=_Parser)
    me = macts.add_parser("expand", help="expand one part (I..VI)")
    me.add_argument("part", choices=timeline.PART_IDS, help="part id")
    me.set_defaults(func=cmd_mosaic_expand)

    rnd = cmds.add_parser("render", help="SVG and MIDI output")
    racts = rnd.add_subparsers(dest="action", required=True, parser_class=_Parser)
    roll = racts.add_parser("roll", help="piano roll of a .score.txt file")
    roll.add_argument("score_file", help="input .score.txt")
    roll.add_argument("--out", help="output .svg (default stdout)")
    roll.set_defaults(func=cmd_render_roll)
    til = racts.add_parser("tiling", help="draw a figure on the three hexagons")
    til.add_argument("--figure", choices=("hat", "large-kite", "hexagons"), default="hat", help="which figure")
    til.add_argument("--out", help="output .svg (default stdout)")
    til.set_defaults(func=cmd_render_tiling)
    mid = racts.add_parser("midi", help="Standard MIDI File from a .score.txt file")
    mid.add_argument("score_file", help="input .score.txt")
    mid.add_argument("--out", help="output .mid")
    mid.set_defaults(func=cmd_render_midi)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return 1
    except SystemExit as exc:  # --help
        return exc.code if isinstance(exc.code, int) else 0
    try:
        cfg = load_config(args.config)
        return args.func(args, cfg)
    except SearchLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DomainError, ParseError, TessellataError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
