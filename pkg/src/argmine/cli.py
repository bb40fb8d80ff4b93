"""Command-line interface: `argmine {annotate|mine|query|eval|dump-rules}`."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from functools import lru_cache
from pathlib import Path

from . import __version__
from .evaluation import LENIENT, STRICT, Corpus, DocumentMismatch, MissingDocument, evaluate_corpus
from .gazetteer import GazetteerFormatError, MissingFile
from .kb import (
    KnowledgeBase, Literal, MalformedAssertion, ParseError, TBoxError, UnknownName, builtin_tbox, format_abox,
    parse_abox, parse_tbox, write_atomic,
)
from .miner import arguments_to_assertions, assemble_arguments, mine_document
from .patterns import RuleSyntaxError, builtin_phases, format_rules
from .pipeline import DEFAULT_GAZETTEER, PipelineConfig, annotate_document, load_resources
from .standoff import StandoffDoc, StandoffError, document_records, format_standoff, read_corpus_dir

log = logging.getLogger("argmine")

ABOX_NAME = "abox.txt"
INPUT_ERRORS = (OSError, UnicodeDecodeError, GazetteerFormatError, RuleSyntaxError, ParseError,
                StandoffError, UnknownName, MissingDocument, DocumentMismatch, TBoxError, MalformedAssertion)


class InputError(Exception):
    pass


def _inputs(paths: list[str]) -> list[Path]:
    """Text files named directly or found (as *.txt) in named directories."""
    files: list[Path] = []
    for p in map(Path, paths):
        if p.is_dir():
            files.extend(sorted(p.glob("*.txt")))
        elif p.is_file():
            files.append(p)
        else:
            raise InputError(f"no such file or directory: {p}")
    seen: dict[str, Path] = {}
    for f in files:
        if f.stem in seen:
            raise InputError(f"duplicate document id {f.stem!r}: {seen[f.stem]} and {f}")
        seen[f.stem] = f
    return files


def _config(args: argparse.Namespace) -> PipelineConfig:
    return PipelineConfig(
        gazetteer=Path(args.gazetteer),
        rules=tuple(Path(r) for r in args.rules),
        macro_gap=args.macro_gap,
        window=getattr(args, "window", 2),
        strict=getattr(args, "strict_alg1", False),
        eval_mode=getattr(args, "eval_mode", STRICT),
    )


@lru_cache(maxsize=4)
def _resources(config: PipelineConfig):
    return load_resources(config)


def _annotate_one(job: tuple[Path, PipelineConfig]) -> tuple[str, str, str]:
    path, config = job
    text = path.read_text(encoding="utf-8")
    doc = annotate_document(path.stem, text, _resources(config), config.macro_gap)
    return doc.id, text, format_standoff(StandoffDoc(doc.id, document_records(doc.annotations)))


def _mine_one(job: tuple[Path, PipelineConfig]):
    path, config = job
    text = path.read_text(encoding="utf-8")
    doc = annotate_document(path.stem, text, _resources(config), config.macro_gap)
    mined = mine_document(doc, config.mode)
    arguments = assemble_arguments(doc, config.window, config.mode, mined)
    records = document_records(doc.annotations, {"Claim", "Premise"})
    return doc.id, text, format_standoff(StandoffDoc(doc.id, records)), arguments


def _run(func, files: list[Path], config: PipelineConfig, jobs: int) -> list:
    work = [(f, config) for f in files]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(func, work))
    return [func(w) for w in work]


def _write_doc(out: Path, doc_id: str, text: str, standoff: str) -> None:
    write_atomic(out / f"{doc_id}.txt", text)
    write_atomic(out / f"{doc_id}.ann", standoff)


def cmd_annotate(args: argparse.Namespace) -> int:
    config = _config(args)
    _resources(config)
    out = Path(args.output)
    for doc_id, text, standoff in _run(_annotate_one, _inputs(args.inputs), config, args.jobs):
        _write_doc(out, doc_id, text, standoff)
    return 0


def cmd_mine(args: argparse.Namespace) -> int:
    config = _config(args)
    _resources(config)
    out = Path(args.output)
    kb = KnowledgeBase(tbox=_tbox(args.tbox))
    for doc_id, text, standoff, arguments in _run(_mine_one, _inputs(args.inputs), config, args.jobs):
        _write_doc(out, doc_id, text, standoff)
        for a in arguments_to_assertions(arguments, doc_id):
            kb.assert_fact(a)
        print(f"{doc_id}\t{len(arguments)}")
    with_derived = args.with_derived
    if args.classify:
        kb.classify_individuals()
        with_derived = True
    write_atomic(out / ABOX_NAME, format_abox(kb, with_derived))
    return 0


def _tbox(path: str | None):
    tbox = builtin_tbox()
    if path:
        tbox += parse_tbox(Path(path).read_text(encoding="utf-8"))
    return tbox


def _show(term) -> str:
    if isinstance(term, Literal):
        return json.dumps(term.value, ensure_ascii=False)
    return term


def cmd_query(args: argparse.Namespace) -> int:
    kb = parse_abox(args.abox, _tbox(args.tbox))
    kb.classify_individuals()
    form, *rest = args.query
    if form == "instances" and len(rest) == 1:
        lines = sorted(kb.query_concept_instances(rest[0]))
    elif form == "role" and len(rest) in (1, 2):
        subject = rest[1] if len(rest) == 2 else None
        pairs = kb.query_role(rest[0], subject)
        if subject is None:
            lines = sorted(f"{s}\t{_show(o)}" for s, o in pairs)
        else:
            lines = sorted(_show(o) for _, o in pairs)
    else:
        raise InputError("query must be 'instances CONCEPT' or 'role ROLE [SUBJECT]'")
    for line in lines:
        print(line)
    return 0


def _load_eval_corpus(directory: str) -> Corpus:
    if not Path(directory).is_dir():
        raise InputError(f"not a directory: {directory}")
    corpus: Corpus = {}
    for doc_id, (doc, text) in read_corpus_dir(directory).items():
        spans: dict[str, list] = {}
        for r in doc.records:
            spans.setdefault(r.type, []).append(r.span)
        corpus[doc_id] = (text, spans)
    return corpus


def cmd_eval(args: argparse.Namespace) -> int:
    pred = _load_eval_corpus(args.pred)
    gold = _load_eval_corpus(args.gold)
    report = evaluate_corpus(pred, gold, args.eval_mode)
    text = report.to_text()
    sys.stdout.write(text)
    out = Path(args.output) if args.output else Path(args.pred)
    write_atomic(out / f"report.{args.eval_mode}.txt", text)
    write_atomic(out / f"report.{args.eval_mode}.csv", report.to_csv())
    return 0


def cmd_dump_rules(args: argparse.Namespace) -> int:
    sys.stdout.write(format_rules(list(builtin_phases(args.macro_gap))))
    return 0


def _nonnegative(value: str) -> int:
    n = int(value)
    if n < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return n


def _positive(value: str) -> int:
    n = int(value)
    if n < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="argmine", description="Rule-based argument mining.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log decisions to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def pipeline_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--gazetteer", default=str(DEFAULT_GAZETTEER), help="gazetteer .def file")
        p.add_argument("--rules", action="append", default=[], help="extra rule file (repeatable)")
        p.add_argument("--macro-gap", type=_nonnegative, default=3, help="max tokens between macro parts")
        p.add_argument("--jobs", type=_positive, default=1, help="documents processed in parallel")

    p = sub.add_parser("annotate", help="write gazetteer and macro annotations")
    p.add_argument("inputs", nargs="*", help="text files or directories of .txt files")
    p.add_argument("-o", "--output", required=True, help="output directory")
    pipeline_flags(p)
    p.set_defaults(func=cmd_annotate)

    p = sub.add_parser("mine", help="extract claims, premises and arguments")
    p.add_argument("inputs", nargs="*", help="text files or directories of .txt files")
    p.add_argument("-o", "--output", required=True, help="output directory")
    pipeline_flags(p)
    p.add_argument("--window", type=_nonnegative, default=2, help="premise attachment window in sentences")
    p.add_argument("--strict-alg1", action="store_true", help="literal reading of the extraction algorithm")
    p.add_argument("--classify", action="store_true", help="classify arguments and export the closure")
    p.add_argument("--with-derived", action="store_true", help="export derived facts too")
    p.add_argument("--tbox", help="file with extra TBox axioms")
    p.set_defaults(func=cmd_mine)

    p = sub.add_parser("query", help="query an ABox")
    p.add_argument("abox", help="ABox file")
    p.add_argument("query", nargs="+", help="'instances CONCEPT' or 'role ROLE [SUBJECT]'")
    p.add_argument("--tbox", help="file with extra TBox axioms")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("eval", help="score predictions against gold")
    p.add_argument("pred", help="directory of predicted .ann files")
    p.add_argument("gold", help="directory of gold .ann files")
    p.add_argument("--eval-mode", choices=(STRICT, LENIENT), default=STRICT)
    p.add_argument("-o", "--output", help="directory for report files (default: pred)")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("dump-rules", help="print the built-in macro rules")
    p.add_argument("--macro-gap", type=_nonnegative, default=3)
    p.set_defaults(func=cmd_dump_rules)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except MissingFile as exc:
        print(f"argmine: missing file: {exc.path}", file=sys.stderr)
        return 2
    except (InputError, *INPUT_ERRORS) as exc:
        print(f"argmine: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        log.exception("internal error")
        print(f"argmine: internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
