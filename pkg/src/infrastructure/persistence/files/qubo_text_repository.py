import logging
import re
from pathlib import Path

from pydantic import ValidationError

from src.core.domain import AuxDefinition, QuboModel
from src.core.exceptions import ModelError, QuboFormatError

from src.application.repositories import IQuboRepository

logger = logging.getLogger(__name__)

_AUX_LINE = re.compile(r"^#\s*aux\s+(\d+)\s*=\s*(\d+)\s*\*\s*(\d+)\s*$")
_PENALTY_LINE = re.compile(r"^#\s*penalty\s+(\S+)\s*$")


def _real(value: float) -> str:
    return format(value, ".17g")


class QuboTextRepository(IQuboRepository):
    """
    Plain-text QUBO files.

    ``p qubo <num_vars> <num_original>`` header, ``offset <real>``, one
    ``<i> <j> <real>`` line per nonzero coefficient (i = j for linear
    terms) and ``#`` comments, two of which carry data:
    ``# aux <u> = <i>*<j>`` and ``# penalty <M>``.
    Reals are written with 17 significant digits, so a load after a save
    reproduces the model exactly.
    """

    def save(self, model: QuboModel, path: Path) -> None:
        lines = [
            "# subset-qubo model",
            f"p qubo {model.num_vars} {model.num_original}",
            f"offset {_real(model.offset)}",
            f"# penalty {_real(model.penalty_m)}",
        ]
        lines.extend(
            f"# aux {aux.aux_index} = {aux.parent_i}*{aux.parent_j}"
            for aux in model.aux_defs
        )
        lines.extend(
            f"{i} {i} {_real(coeff)}" for i, coeff in enumerate(model.linear) if coeff != 0.0
        )
        lines.extend(
            f"{i} {j} {_real(coeff)}" for (i, j), coeff in sorted(model.quadratic.items())
        )
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text("\n".join(lines) + "\n", encoding="utf-8")
        logger.info("Wrote QUBO with %d variables to %s", model.num_vars, path)

    def load(self, path: Path) -> QuboModel:
        try:
            text = path.read_text(encoding="utf-8")
        except (OSError, UnicodeDecodeError) as e:
            raise QuboFormatError(0, f"cannot read {path}: {e}")

        header: tuple[int, int] | None = None
        offset: float | None = None
        penalty = 1.0
        aux_defs: list[AuxDefinition] = []
        linear: dict[int, float] = {}
        quadratic: dict[tuple[int, int], float] = {}

        for line_no, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                if match := _AUX_LINE.match(line):
                    u, i, j = (int(g) for g in match.groups())
                    aux_defs.append(AuxDefinition(aux_index=u, parent_i=i, parent_j=j))
                elif match := _PENALTY_LINE.match(line):
                    penalty = self._parse_real(match.group(1), line_no)
                continue

            fields = line.split()
            if fields[0] == "p":
                if header is not None:
                    raise QuboFormatError(line_no, "duplicate header")
                if len(fields) != 4 or fields[1] != "qubo":
                    raise QuboFormatError(line_no, "expected 'p qubo <num_vars> <num_original>'")
                header = (
                    self._parse_index(fields[2], line_no),
                    self._parse_index(fields[3], line_no),
                )
            elif fields[0] == "offset":
                if len(fields) != 2 or offset is not None:
                    raise QuboFormatError(line_no, "expected a single 'offset <real>' line")
                offset = self._parse_real(fields[1], line_no)
            else:
                if header is None:
                    raise QuboFormatError(line_no, "coefficient before the 'p qubo' header")
                if len(fields) != 3:
                    raise QuboFormatError(line_no, "expected '<i> <j> <real>'")
                i = self._parse_index(fields[0], line_no)
                j = self._parse_index(fields[1], line_no)
                coeff = self._parse_real(fields[2], line_no)
                if not (i <= j < header[0]):
                    raise QuboFormatError(line_no, f"index pair ({i}, {j}) is out of range")
                target: dict = linear if i == j else quadratic
                key = i if i == j else (i, j)
                if key in target:
                    raise QuboFormatError(line_no, f"duplicate entry for {key}")
                target[key] = coeff

        if header is None:
            raise QuboFormatError(0, "missing 'p qubo' header")
        num_vars, num_original = header
        try:
            return QuboModel(
                num_vars=num_vars,
                num_original=num_original,
                offset=offset if offset is not None else 0.0,
                linear=tuple(linear.get(i, 0.0) for i in range(num_vars)),
                quadratic=quadratic,
                aux_defs=tuple(aux_defs),
                penalty_m=penalty,
            )
        except (ModelError, ValidationError) as e:
            raise QuboFormatError(0, f"inconsistent model: {e}")

    @staticmethod
    def _parse_index(token: str, line_no: int) -> int:
        if not token.isdigit():
            raise QuboFormatError(line_no, f"{token!r} is not a variable index")
        return int(token)

    @staticmethod
    def _parse_real(token: str, line_no: int) -> float:
        try:
            return float(token)
        except ValueError:
            raise QuboFormatError(line_no, f"{token!r} is not a real number")
