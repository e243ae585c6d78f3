"""Base class for the mubcorr management commands."""

import json
import logging
from contextlib import contextmanager
from pathlib import Path

import numpy as np
from django.core.management.base import BaseCommand, CommandError
from rest_framework import serializers
from rest_framework.renderers import JSONRenderer

from apps.common.exceptions import MubCorrError, NumericalError
from apps.detect.scan import write_csv

logger = logging.getLogger(__name__)

USAGE_EXIT = 2


class MubCorrCommand(BaseCommand):
    """Runs ``run(**options)`` and maps library errors to exit codes.

    Domain errors exit with their ``exit_code`` (2 usage, 3 unsupported domain,
    4 numerical failure); schema errors from DRF serializers exit with 2.
    """

    requires_system_checks = []

    def handle(self, *args, **options):
        try:
            self.run(**options)
        except MubCorrError as exc:
            self.fail(exc)
        except np.linalg.LinAlgError as exc:
            self.fail(NumericalError(f"Linear algebra failure: {exc}", code="linalg"), exc)
        except serializers.ValidationError as exc:
            raise CommandError(
                json.dumps({"detail": exc.detail, "code": "INVALID_INPUT"}, ensure_ascii=False),
                returncode=USAGE_EXIT,
            ) from exc

    def fail(self, error, cause=None):
        logger.debug("Command failed: %s", error.as_dict())
        raise CommandError(
            json.dumps(error.as_dict(), ensure_ascii=False), returncode=error.exit_code
        ) from (cause or error)

    def run(self, **options):
        raise NotImplementedError("subclasses of MubCorrCommand must provide a run() method")

    @contextmanager
    def output(self, options):
        """The ``--out`` file, or the command's stdout."""
        path = options.get("out")
        if not path:
            yield self.stdout
            return
        with Path(path).open("w", encoding="utf-8", newline="") as handle:
            yield handle

    def emit_json(self, payload, options):
        text = JSONRenderer().render(payload, renderer_context={"indent": 2}).decode("utf-8")
        with self.output(options) as handle:
            handle.write(text + "\n")

    def emit_csv(self, rows, columns, options):
        with self.output(options) as handle:
            write_csv(rows, handle, columns)

    def emit(self, payload, rows, columns, options):
        """JSON ``payload`` or CSV ``rows`` depending on ``--format``."""
        if options.get("format") == "csv":
            self.emit_csv(rows, columns, options)
        else:
            self.emit_json(payload, options)

    def note(self, message):
        self.stderr.write(message, style_func=lambda text: text)
