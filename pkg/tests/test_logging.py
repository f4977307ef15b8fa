# Copyright (c) Jean-Charles Lefebvre
# SPDX-License-Identifier: MIT

import io
import os
import unittest

from qmedian import logging
from qmedian._term import ansi_strip

from ._common import TestCaseBase


def _record(level=logging.WARNING, msg="hello %d", args=(3, )):
    return logging.LogRecord(
        "qmedian.test", level, __file__, 42, msg, args, None)


class TestLevels(TestCaseBase):
    def test_notice(self):
        self.assertEqual(logging.NOTICE, logging.INFO + 5)
        self.assertEqual(logging.getLevelName(logging.NOTICE), "NOTICE")

        logger = logging.get_logger("qmedian.test")
        self.assertIsInstance(logger, logging.Logger)
        with self.assertLogs(logger, logging.NOTICE) as logs:
            logger.notice("found %d", 7)
            logger.info("hidden")
        self.assertEqual(logs.output, ["NOTICE:qmedian.test:found 7"])

    def test_root_logger(self):
        self.assertTrue(hasattr(logging.get_logger(None), "notice"))

    def test_set_log_level(self):
        root = logging.get_logger(None)
        previous = root.level
        try:
            logging.set_log_level(logging.DEBUG)
            self.assertEqual(root.level, logging.DEBUG)
            self.assertEqual(
                logging.get_logger("asyncio").level, logging.INFO)
        finally:
            logging.set_log_level(previous)


class TestFormatter(TestCaseBase):
    def test_milliseconds(self):
        record = _record()
        fmt = logging.QmedianLogFormatter()
        self.assertEqual(
            fmt.formatTime(record, "%l"), f"{int(record.msecs):03}")
        self.assertEqual(fmt.formatTime(record, "%%l"), "%l")
        self.assertTrue(
            fmt.formatTime(record, "%H:%M:%S.%l").endswith(
                f".{int(record.msecs):03}"))
        self.assertEqual(fmt.formatTime(record), fmt.formatTime(record, None))


class TestHandler(TestCaseBase):
    def test_plain_stream(self):
        handler = logging.QmedianStreamHandler(
            stream=io.StringIO(), datefmt=False, srcinfo=False)
        self.assertFalse(handler.styling)
        self.assertEqual(
            handler.format(_record()), f"[{os.getpid()}] WARNING hello 3")

    def test_source_info_and_date(self):
        handler = logging.QmedianStreamHandler(stream=io.StringIO())
        text = handler.format(_record())
        self.assertRegex(
            text, r"^\d{4}-\d\d-\d\d \d\d:\d\d:\d\d\.\d{3} \[\d+\] WARNING ")
        self.assertTrue(text.endswith(" <test_logging:42>"))

    def test_styling(self):
        handler = logging.QmedianStreamHandler(
            stream=io.StringIO(), styling=True, datefmt=False, srcinfo=False)
        self.assertTrue(handler.styling)
        text = handler.format(_record(msg="is_median=%s", args=(False, )))
        self.assertIn("\x1b[", text)
        self.assertEqual(
            ansi_strip(text), f"[{os.getpid()}] WARNING is_median=False")

    def test_no_formatter_change(self):
        handler = logging.QmedianStreamHandler(stream=io.StringIO())
        with self.assertRaises(NotImplementedError):
            handler.setFormatter(logging.Formatter())
        with self.assertRaises(ValueError):
            logging.QmedianStreamHandler(stream=io.StringIO(), datefmt=3)


class TestConfigure(TestCaseBase):
    def setUp(self):
        super().setUp()
        root = logging.get_logger(None)
        self._root_level = root.level
        self._root_handlers = list(root.handlers)

    def tearDown(self):
        root = logging.get_logger(None)
        root.handlers[:] = self._root_handlers
        logging.set_log_level(self._root_level)
        super().tearDown()

    def test_single_handler(self):
        stream = io.StringIO()
        logging.configure(logging.INFO, stream=stream, styling=False)
        handler = logging.configure(logging.INFO, stream=stream, styling=False)

        root = logging.get_logger(None)
        ours = [
            h for h in root.handlers
            if isinstance(h, logging.QmedianStreamHandler)]
        self.assertEqual(ours, [handler])
        self.assertEqual(root.level, logging.INFO)

        logging.get_logger("qmedian.test").notice("witness found")
        self.assertIn("NOTICE witness found", stream.getvalue())


if __name__ == "__main__":
    unittest.main()
