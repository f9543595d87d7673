import argparse
from typing import List

from app.models.permutation import Permutation
from app.repositories.complex_repository import ComplexRepository
from app.schemas.report import VerificationReport
from app.services.certify_service import CertifyService
from app.services.isomorphism_service import IsomorphismService
from app.services.verify_service import VerifyService
from app.utils.exceptions import ValidationException

CHECKS = ("balanced", "cs", "automorphism", "pseudomanifold", "links", "skeleton", "isomorphism", "balanced-product")


def register(subparsers) -> None:
    parser = subparsers.add_parser("verify", help="Run one certificate check and print its report")
    parser.add_argument("check", choices=CHECKS)
    parser.add_argument("file", nargs="?", help="complex file (not used by balanced-product)")
    parser.add_argument("--coloring", help="JSON object vertex -> colour; default: embedded colouring")
    parser.add_argument("--involution", help="JSON object vertex -> vertex; default: embedded involution")
    parser.add_argument("--permutation", help="automorphism: JSON object vertex -> vertex")
    parser.add_argument("--against", help="isomorphism/skeleton: second complex file")
    parser.add_argument("--i", type=int, help="skeleton: dimension bound")
    parser.add_argument("--d", type=int, help="balanced-product: dimension parameter")
    parser.set_defaults(func=handle)


def _require(value, name: str):
    if value is None:
        raise ValidationException("Validation failed", details={name: "is required for this check"})
    return value


def run_check(args: argparse.Namespace) -> List[VerificationReport]:
    if args.check == "balanced-product":
        manifest = CertifyService(out_dir=args.out, fmt=args.format, jobs=args.jobs).certify(
            "balanced-product", {"d": _require(args.d, "d")}, command=args.argv or ["verify", "balanced-product"]
        )
        return manifest.reports

    repository = ComplexRepository(args.out)
    annotated = repository.load(_require(args.file, "file"))
    complex_ = annotated.complex

    if args.check == "balanced":
        coloring = repository.load_mapping(args.coloring) if args.coloring else annotated.coloring
        return [VerifyService.check_balanced(complex_, coloring)]
    if args.check == "cs":
        if args.involution:
            involution = Permutation(repository.load_mapping(args.involution), name="involution")
        else:
            involution = _require(annotated.involution, "involution")
        return [VerifyService.check_cs(complex_, involution)]
    if args.check == "automorphism":
        permutation = Permutation(repository.load_mapping(_require(args.permutation, "permutation")), name="g")
        return [VerifyService.check_automorphism(complex_, permutation)]
    if args.check == "pseudomanifold":
        return [VerifyService.check_closed_pseudomanifold(complex_)]
    if args.check == "links":
        return [VerifyService.link_homology_survey(complex_, jobs=args.jobs)]

    other = repository.load(_require(args.against, "against")).complex
    if args.check == "skeleton":
        return [VerifyService.skeleton_contained(complex_, other, _require(args.i, "i"))]
    found = IsomorphismService().find_isomorphism(complex_, other)
    return [VerificationReport(
        check="isomorphism",
        passed=found is not None,
        witness=None if found is not None else {"first": args.file, "second": args.against},
        metrics={"map": found.mapping} if found is not None else {},
    )]


def handle(args: argparse.Namespace) -> int:
    reports = run_check(args)
    for report in reports:
        print(report.model_dump_json(indent=2))
    return 0 if all(r.passed for r in reports) else 1
