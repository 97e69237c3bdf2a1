"""
Interface en ligne de commande : exemples de référence, génération
d'instances, attaques et évaluation d'appariements.
"""
import argparse
import logging
import random
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from .core.errors import MalformedInstanceError, SesquiError
from .core.log import setup_logging
from .models.instance import FAMILIES, VARIANTS, InstanceSpec
from .services.attacks import attack_instance, compare_with_truth
from .services.golden import verify_example
from .services.instances import gen_instance, load_instance, save_instance
from .services.reports import (
    PAIRING_OPS,
    attack_report_to_model,
    evaluate_pairing,
    format_attack_report,
    format_example_report,
)

logger = logging.getLogger("sesqui.cli")


def _coords(text: str) -> List[int]:
    try:
        u, v = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"coordonnées attendues sous la forme u,v: {text!r}")
    return [u, v]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sesqui", description="Appariements de Tate sesquilinéaires et attaques")
    parser.add_argument("--verbose", action="store_true", help="Afficher les journaux sur stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    example = sub.add_parser("verify-example", help="Vérifier un exemple publié")
    example.add_argument("--name", required=True, choices=["f541", "f101", "wouter", "gaussian"])
    example.add_argument("--r", type=int, default=3)
    example.add_argument("--p", type=int)
    example.add_argument("--m", type=int)

    gen = sub.add_parser("gen", help="Générer une instance d'attaque")
    gen.add_argument("--family", required=True, choices=FAMILIES)
    gen.add_argument("--degree", type=int, default=1)
    gen.add_argument("--variant", default="norm", choices=VARIANTS)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--out", required=True)
    gen.add_argument("--r", type=int)
    gen.add_argument("--p", type=int)
    gen.add_argument("--m", type=int)

    attack = sub.add_parser("attack", help="Attaquer une instance")
    attack.add_argument("--in", dest="infile", required=True)
    attack.add_argument("--reveal", action="store_true", help="Comparer à la vérité scellée")
    attack.add_argument("--json", dest="json_out", help="Écrire le rapport structuré dans ce fichier")

    pair = sub.add_parser("pair", help="Évaluer un appariement")
    pair.add_argument("--in", dest="infile", required=True)
    pair.add_argument("--op", default="sesqui", choices=PAIRING_OPS)
    pair.add_argument("--P", dest="P", required=True, type=_coords)
    pair.add_argument("--Q", dest="Q", required=True, type=_coords)
    return parser


def _verify(args) -> int:
    report = verify_example(args.name, r=args.r, p=args.p, m=args.m, rng=random.Random(0))
    print(format_example_report(report))
    return 0 if report.ok else 2


def _gen(args) -> int:
    spec = InstanceSpec(family=args.family, degree=args.degree, variant=args.variant,
                        r=args.r, p=args.p, m=args.m)
    inst = gen_instance(spec, args.seed)
    save_instance(inst, args.out)
    print(f"instance {args.family}/{args.variant} (d = {args.degree}, m = {inst.m}) écrite dans {args.out}")
    return 0


def _attack(args) -> int:
    inst = load_instance(args.infile)
    rng = random.Random(inst.seed)
    report = attack_instance(inst, rng)
    print(format_attack_report(report))
    verdict = None
    if args.reveal:
        if inst.sealed is None:
            raise MalformedInstanceError("--reveal demandé mais l'instance n'a pas de bloc scellé")
        verdict = "PASS" if compare_with_truth(inst, report, rng) else "FAIL"
        print(verdict)
    if args.json_out:
        model = attack_report_to_model(report, verdict, rng)
        Path(args.json_out).write_text(model.model_dump_json(indent=2) + "\n", encoding="utf-8")
    return 2 if verdict == "FAIL" else 0


def _pair(args) -> int:
    inst = load_instance(args.infile)
    report = evaluate_pairing(inst, args.op, args.P, args.Q, random.Random(0))
    print(f"{args.op} sur E[{report.m}] : logs {', '.join(report.logs)} en base {report.generator}")
    return 0


COMMANDS = {"verify-example": _verify, "gen": _gen, "attack": _attack, "pair": _pair}


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    setup_logging("DEBUG" if args.verbose else "CRITICAL")
    try:
        return COMMANDS[args.command](args)
    except SesquiError as e:
        print(f"ERROR {e.code}: {e.message}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
