import sys
from typing import List, Optional

from app.cli import parse_args
from app.utils.exceptions import (
    ClosureCapExceeded,
    ConstructionInvariantException,
    CriterionFailedException,
    FaceNotFoundException,
    GluingException,
    HandleIllegalException,
    MalformedInputException,
    NotAPseudomanifoldException,
    NotAShellingException,
    SearchBudgetExceeded,
    SymmetryException,
    ValidationException,
    VertexCollisionException,
)
import logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_BUDGET = 2

DOMAIN_ERRORS = (
    ConstructionInvariantException,
    CriterionFailedException,
    FaceNotFoundException,
    GluingException,
    HandleIllegalException,
    MalformedInputException,
    NotAPseudomanifoldException,
    NotAShellingException,
    SymmetryException,
    VertexCollisionException,
)


def main(argv: Optional[List[str]] = None) -> int:
    """
    Entry point of the spheretri command

    Exit codes: 0 when every check passes, 1 on a failed check or an
    error, 2 when a search budget or group-closure cap is exhausted
    """
    args = parse_args(argv)
    logging.basicConfig(
        level=args.log_level.upper(),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
    )

    try:
        return args.func(args)
    except (SearchBudgetExceeded, ClosureCapExceeded) as e:
        logger.error(f"Limit reached: {e.message}")
        print(f"error: {e.message}", file=sys.stderr)
        return EXIT_BUDGET
    except ValidationException as e:
        print(f"error: {e.message}: {e.details}", file=sys.stderr)
        return EXIT_FAILED
    except DOMAIN_ERRORS as e:
        print(f"error: {e.message}", file=sys.stderr)
        return EXIT_FAILED
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILED
    except Exception as e:
        logger.error(f"Unexpected error: {str(e)}", exc_info=True)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
