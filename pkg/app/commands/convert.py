import argparse

from app.repositories.complex_repository import ComplexRepository, detect_format


def register(subparsers) -> None:
    parser = subparsers.add_parser("convert", help="Convert a complex between the plain and JSON formats")
    parser.add_argument("input")
    parser.add_argument("output")
    parser.set_defaults(func=handle)


def handle(args: argparse.Namespace) -> int:
    """The output format is --format when given, else the output suffix"""
    repository = ComplexRepository(args.out)
    annotated = repository.load(args.input)
    fmt = args.format_flag or detect_format(args.output)
    digest = repository.save_to(annotated, args.output, fmt)
    print(f"{args.output}: {fmt}, sha256 {digest}")
    return 0
