import argparse

from app.repositories.complex_repository import ComplexRepository
from app.services.homology_service import HomologyService


def register(subparsers) -> None:
    parser = subparsers.add_parser("homology", help="Integral homology of a complex file")
    parser.add_argument("file")
    parser.add_argument("--unreduced", action="store_true", help="report unreduced homology")
    parser.add_argument("--verify-transforms", action="store_true", help="compute and check unimodular Smith transforms of every boundary matrix")
    parser.set_defaults(func=handle)


def handle(args: argparse.Namespace) -> int:
    complex_ = ComplexRepository(args.out).load(args.file).complex
    if args.verify_transforms:
        chain = HomologyService.boundary_matrices(complex_)
        for k in range(0, chain.top + 1):
            HomologyService.smith_normal_form(chain.boundary(k), transforms=True)
    profile = HomologyService.reduced_homology(complex_, reduced=not args.unreduced)
    if args.format_flag == "json":
        print(profile.model_dump_json(indent=2))
    else:
        for line in profile.lines():
            print(line)
    return 0
