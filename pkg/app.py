"""Command-line entry point: annotate, mine, train, explain, audit and analyse pattern-based models."""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Dict, List, Optional, Sequence

from analysis.metrics import metrics
from analysis.statistics import aggregate_stats, format_stats_table, framework_stats
from analysis.sufficiency import FlipFilter, SufficiencyCase, TargetKind, sufficiency_curve
from corpus.corpus_io import annotate_dataset, load_corpus, load_lexicon, save_corpus, select_documents
from corpus.types import Document
from explainers.axplr import make_explainer
from explainers.explanation import Method
from explainers.rendering import FORMATS, render
from patterns.miner import MinerConfig, mine_patterns
from patterns.pattern import load_patterns, save_patterns
from plr.model import PlrModel, load_model, predict, save_model
from plr.training import TrainingConfig, train, training_accuracy
from properties.group_properties import GP_IDS, Stage, check_all
from properties.random_frameworks import RandomFrameworkSpec
from properties.search import counterexample_search, gp_summary
from qbaf.export import framework_to_dict, load_framework, to_dot
from qbaf.framework import Variant, build_qbafc
from qbaf.semantics import compute_strengths, postprocess
from utils.helpers import AxplrError, ConfigError, default_seed, dumps_json, setup_logging, write_text

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2

FRAMEWORK_KINDS = ("TQBAFc", "TQBAFc′", "BQBAFc", "BQBAFc′")


class UsageError(Exception):
    pass


class CliParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        write_text(output, text)
        logger.info("Wrote %s", output)
    else:
        sys.stdout.write(text)


def _load_docs(path: str, doc_ids: Optional[List[str]], require_labels: bool = False) -> List[Document]:
    return select_documents(load_corpus(path, require_labels=require_labels), doc_ids)


def cmd_annotate(args) -> int:
    dataset = load_corpus(args.corpus, require_labels=False)
    lexicons = [load_lexicon(p) for p in args.lexicon]
    save_corpus(annotate_dataset(dataset, lexicons), args.output)
    return EXIT_OK


def cmd_mine(args) -> int:
    config = MinerConfig(
        alphabet_size=args.alphabet_size,
        gap_budget=args.gap,
        max_slots=args.max_slots,
        max_attrs_per_pattern=args.max_attrs,
        num_patterns=args.num_patterns,
        seed=args.seed,
        beam_width=args.beam_width,
        min_support=args.min_support,
        max_documents=args.max_documents,
    )
    config.validate()
    patterns = mine_patterns(load_corpus(args.corpus), config)
    save_patterns(patterns, args.output)
    return EXIT_OK


def cmd_train(args) -> int:
    hyper = TrainingConfig(
        learning_rate=args.learning_rate, l2_lambda=args.l2, epochs=args.epochs, seed=args.seed,
    )
    hyper.validate()
    data = load_corpus(args.corpus)
    result = train(data, load_patterns(args.patterns), hyper)
    save_model(result.model, args.output)
    logger.info("Training accuracy %.4f", training_accuracy(result.model, data))
    return EXIT_OK


def cmd_explain(args) -> int:
    model = load_model(args.model)
    docs = _load_docs(args.corpus, args.doc)
    sample_corpus = load_corpus(args.samples_corpus, require_labels=False) if args.samples_corpus else None
    explainer = make_explainer(
        model, args.method, args.variant, args.k, sample_corpus=sample_corpus,
        **({"include_attackers": not args.no_attackers} if args.method != Method.FLX.value else {}),
    )
    explanations = explainer.explain_all(docs, jobs=args.jobs, min_probability=args.min_probability)

    if args.format == "json":
        text = "".join(
            json.dumps(e.to_dict(), sort_keys=True, ensure_ascii=False) + "\n" for e in explanations
        )
        _emit(text, args.output)
    elif args.format == "text":
        _emit("\n".join(render(e, "text").decode("utf-8") for e in explanations), args.output)
    elif len(explanations) == 1 and not (args.output and Path(args.output).is_dir()):
        _emit(render(explanations[0], "html").decode("utf-8"), args.output)
    else:
        if not args.output:
            raise UsageError("HTML output for several documents needs --output DIRECTORY")
        out_dir = Path(args.output)
        out_dir.mkdir(parents=True, exist_ok=True)
        for e in explanations:
            write_text(out_dir / f"{e.document_id}.html", render(e, "html").decode("utf-8"))
        logger.info("Wrote %d HTML file(s) to %s", len(explanations), out_dir)
    return EXIT_OK


def cmd_evaluate(args) -> int:
    model = load_model(args.model)
    data = load_corpus(args.corpus)
    report = metrics((doc.label, predict(model, doc)[0]) for doc in data)
    _emit(dumps_json(report.to_dict()) if args.format == "json" else report.to_text(), args.output)
    return EXIT_OK


def _four_kinds(model: PlrModel, doc: Document):
    for variant, names in ((Variant.TOP_DOWN, FRAMEWORK_KINDS[:2]), (Variant.BOTTOM_UP, FRAMEWORK_KINDS[2:])):
        fw = build_qbafc(model, doc, variant)
        s = compute_strengths(fw)
        fw_post, _ = postprocess(fw, s)
        yield names[0], fw
        yield names[1], fw_post


def cmd_stats(args) -> int:
    model = load_model(args.model)
    data = load_corpus(args.corpus)
    records: Dict[str, list] = {kind: [] for kind in FRAMEWORK_KINDS}
    for doc in data:
        y_hat = predict(model, doc)[0]
        for kind, fw in _four_kinds(model, doc):
            records[kind].append((framework_stats(fw), doc.label, y_hat))
    tables = {kind: aggregate_stats(rows) for kind, rows in records.items()}
    if args.format == "json":
        payload = {
            kind: {
                f"{group}/{stat}": {measure: float(v) for measure, v in table[(group, stat)].items()}
                for group, stat in table.columns
            }
            for kind, table in tables.items()
        }
        _emit(dumps_json(payload), args.output)
    else:
        blocks = [f"{kind}\n{format_stats_table(table).to_string()}\n" for kind, table in tables.items()]
        _emit("\n".join(blocks), args.output)
    return EXIT_OK


def cmd_sufficiency(args) -> int:
    model = load_model(args.model)
    data = load_corpus(args.corpus, require_labels=False)
    out_dir = Path(args.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for variant in Variant:
        cases = []
        for doc in data:
            fw = build_qbafc(model, doc, variant)
            fw_post, s_post = postprocess(fw, compute_strengths(fw))
            cases.append(SufficiencyCase(fw, fw_post, s_post))
        for kind in TargetKind:
            for flip in FlipFilter:
                curve = sufficiency_curve(cases, kind, flip)
                path = out_dir / f"sufficiency_{variant.value}_{kind.value}_{flip.value}.csv"
                curve.to_csv(path, index=False, float_format="%.4f", lineterminator="\n")
                logger.info("Wrote %s (%d point(s))", path, len(curve))
    return EXIT_OK


def cmd_check_gps(args) -> int:
    if args.framework:
        fw, _ = load_framework(args.framework)
        s = compute_strengths(fw)
        reports = check_all(fw, s)
        if args.format == "json":
            _emit(dumps_json({f"GP{gp}": r.to_dict() for gp, r in reports.items()}), args.output)
        else:
            lines = [f"GP{gp}: {r.verdict.value} ({r.violated} violation(s))" for gp, r in reports.items()]
            _emit("\n".join(lines) + "\n", args.output)
        return EXIT_OK

    spec = RandomFrameworkSpec(
        seed=args.seed,
        min_arguments=args.min_arguments,
        max_arguments=args.max_arguments,
        edge_density=args.edge_density,
    )
    if args.search is not None:
        found = counterexample_search(args.search, Stage(args.stage), spec, args.budget)
        if found is None:
            _emit(f"no GP{args.search} counterexample at the {args.stage} stage within {args.budget} trial(s)\n", args.output)
        else:
            payload = {
                "trial": found.trial,
                "witness": found.witness.to_dict(),
                "framework": framework_to_dict(found.staged_framework, found.strengths),
            }
            _emit(dumps_json(payload), args.output)
        return EXIT_OK

    summary = gp_summary(spec, args.trials)
    _emit(dumps_json(summary.to_dict()) if args.format == "json" else summary.to_text(), args.output)
    return EXIT_OK


def cmd_graph(args) -> int:
    model = load_model(args.model)
    doc = _load_docs(args.corpus, [args.doc])[0]
    fw = build_qbafc(model, doc, args.variant)
    s = compute_strengths(fw)
    if args.post:
        fw, s = postprocess(fw, s)
    if args.format == "dot":
        _emit(to_dot(fw, s, name=doc.id), args.output)
    else:
        _emit(dumps_json(framework_to_dict(fw, s)), args.output)
    return EXIT_OK


def _non_negative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {value}")
    return value


def _positive_int(text: str) -> int:
    value = _non_negative_int(text)
    if value == 0:
        raise argparse.ArgumentTypeError("expected a positive integer, got 0")
    return value


def build_parser() -> CliParser:
    parser = CliParser(prog="axplr", description=__doc__)
    parser.add_argument("-v", "--verbose", action="count", default=0, help="more logging (DEBUG)")
    parser.add_argument("-q", "--quiet", action="store_true", help="warnings and errors only")
    sub = parser.add_subparsers(dest="command", parser_class=CliParser)
    seed = default_seed()
    variants = [v.value for v in Variant]

    p = sub.add_parser("annotate", help="add lexicon attributes to a corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--lexicon", action="append", default=[], required=True)
    p.add_argument("--output", required=True)
    p.set_defaults(func=cmd_annotate)

    p = sub.add_parser("mine", help="mine discriminative patterns from a labelled corpus")
    p.add_argument("--corpus", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--num-patterns", type=int, default=50)
    p.add_argument("--gap", type=int, default=2)
    p.add_argument("--max-slots", type=int, default=3)
    p.add_argument("--max-attrs", type=int, default=3)
    p.add_argument("--alphabet-size", type=int, default=50)
    p.add_argument("--beam-width", type=int, default=30)
    p.add_argument("--min-support", type=int, default=2)
    p.add_argument("--max-documents", type=int, default=None)
    p.add_argument("--seed", type=int, default=seed)
    p.set_defaults(func=cmd_mine)

    p = sub.add_parser("train", help="train a pattern-based logistic regression model")
    p.add_argument("--corpus", required=True)
    p.add_argument("--patterns", required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--learning-rate", type=float, default=0.5)
    p.add_argument("--l2", type=float, default=0.001)
    p.add_argument("--epochs", type=int, default=500)
    p.add_argument("--seed", type=int, default=seed)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("explain", help="explain predictions (flx, shallow or deep)")
    p.add_argument("--model", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--doc", action="append", default=None, help="document id (repeatable; default all)")
    p.add_argument("--method", choices=[m.value for m in Method], default=Method.SHALLOW.value)
    p.add_argument("--variant", choices=variants, default=Variant.BOTTOM_UP.value)
    p.add_argument("--k", type=_non_negative_int, default=5)
    p.add_argument("--format", choices=FORMATS, default="text")
    p.add_argument("--no-attackers", action="store_true")
    p.add_argument("--min-probability", type=float, default=None)
    p.add_argument("--samples-corpus", default=None, help="corpus to draw matched phrases from")
    p.add_argument("--jobs", type=_non_negative_int, default=1)
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_explain)

    p = sub.add_parser("evaluate", help="accuracy, precision, recall and F1 on a labelled corpus")
    p.add_argument("--model", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("stats", help="framework size statistics per confusion cell")
    p.add_argument("--model", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("sufficiency", help="write sufficiency curves as CSV files")
    p.add_argument("--model", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--output-dir", required=True)
    p.set_defaults(func=cmd_sufficiency)

    p = sub.add_parser("check-gps", help="audit group properties on random or given frameworks")
    p.add_argument("--trials", type=_non_negative_int, default=1000)
    p.add_argument("--seed", type=int, default=seed)
    p.add_argument("--min-arguments", type=int, default=3)
    p.add_argument("--max-arguments", type=int, default=8)
    p.add_argument("--edge-density", type=float, default=0.5)
    p.add_argument("--framework", default=None, help="framework JSON file to audit instead")
    p.add_argument("--search", type=int, choices=GP_IDS, default=None, help="look for a counterexample")
    p.add_argument("--stage", choices=[s.value for s in Stage], default=Stage.PRE.value)
    p.add_argument("--budget", type=_positive_int, default=10000)
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_check_gps)

    p = sub.add_parser("graph", help="dump one document's framework as DOT or JSON")
    p.add_argument("--model", required=True)
    p.add_argument("--corpus", required=True)
    p.add_argument("--doc", required=True)
    p.add_argument("--variant", choices=variants, default=Variant.BOTTOM_UP.value)
    p.add_argument("--post", action="store_true", help="post-process before dumping")
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.add_argument("--output", default=None)
    p.set_defaults(func=cmd_graph)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        parser = build_parser()
        if not argv:
            parser.print_usage(sys.stderr)
            return EXIT_USAGE
        args = parser.parse_args(argv)
        setup_logging(-1 if args.quiet else args.verbose)
        if args.command is None:
            parser.print_usage(sys.stderr)
            return EXIT_USAGE
        return args.func(args)
    except UsageError as e:
        print(str(e), file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:
        # --help
        return e.code if isinstance(e.code, int) else EXIT_OK
    except ConfigError as e:
        logger.error("%s", e)
        return EXIT_USAGE
    except (AxplrError, OSError) as e:
        logger.error("%s", e)
        return EXIT_DATA
    except ValueError as e:
        # out-of-range flag values rejected by the library
        logger.error("%s", e)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
