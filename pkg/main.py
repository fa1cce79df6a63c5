import sys

from pydantic import ValidationError

try:
    from src.cli.commands import main
except ValidationError as e:
    # OOK_* 환경변수는 import 시점에 검증된다
    print(f"error: invalid settings: {e}", file=sys.stderr)
    raise SystemExit(2) from None

if __name__ == "__main__":
    raise SystemExit(main())
