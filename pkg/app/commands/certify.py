import argparse
import json
import sys

from app.services.certify_service import TARGETS, CertifyService


def register(subparsers) -> None:
    parser = subparsers.add_parser("certify", help="Rebuild a target and run its certificate suite")
    parser.add_argument("target", choices=TARGETS + ("all",))
    parser.add_argument("--d", type=int)
    parser.add_argument("--i", type=int)
    parser.add_argument("--max-d", type=int, default=None, help="upper dimension for b-suite and all")
    parser.add_argument("--samples", type=int, help="homology-engine: number of random matrices")
    parser.add_argument("--seed", type=int, help="homology-engine: random seed")
    parser.add_argument("--emit-intermediates", action="store_true")
    parser.set_defaults(func=handle)


def target_params(args: argparse.Namespace) -> dict:
    if args.target == "b-suite":
        return {"max_d": args.max_d}
    if args.target == "homology-engine":
        return {"samples": args.samples, "seed": args.seed}
    params = {"d": args.d}
    if args.target in ("b-complex", "shelling"):
        params["i"] = args.i
    if args.target == "balanced-product" and args.emit_intermediates:
        params["emit_intermediates"] = True
    return params


def handle(args: argparse.Namespace) -> int:
    service = CertifyService(out_dir=args.out, fmt=args.format, jobs=args.jobs)
    command = args.argv or ["certify", args.target]
    if args.target == "all":
        manifests = service.certify_all(max_d=args.max_d or 6, command=command)
    else:
        manifests = [service.certify(args.target, target_params(args), command=command)]

    for manifest in manifests:
        status = "PASS" if manifest.passed else "FAIL"
        print(f"{manifest.target} {manifest.parameters}: {status} ({len(manifest.reports)} checks)")
        failure = manifest.first_failure()
        if failure is not None:
            print(json.dumps({"check": failure.check, "witness": failure.witness}, default=str), file=sys.stderr)
    return 0 if all(m.passed for m in manifests) else 1
