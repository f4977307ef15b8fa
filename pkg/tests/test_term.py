# Copyright (c) Jean-Charles Lefebvre
# SPDX-License-Identifier: MIT

import io
import os
import unittest
import unittest.mock

from qmedian._term import (
    AnsiStyle, ReportHighlighter, ansi_join, ansi_strip, can_style,
    is_file_tty, select_highlighter)

from ._common import TestCaseBase


class _FakeTty(io.StringIO):
    def isatty(self):
        return True


class TestAnsi(TestCaseBase):
    def test_style(self):
        self.assertEqual(str(AnsiStyle.RESET), "\x1b[0m")
        self.assertEqual(AnsiStyle.FG8_GOOD.sequence, "\x1b[38;5;40m")

    def test_ansi_join(self):
        data = ansi_join(
            AnsiStyle.BOLD, AnsiStyle.FG8_GOOD, "ok ",
            AnsiStyle.FG8_ERROR, "ko",
            AnsiStyle.RESET)
        self.assertEqual(
            data, "\x1b[1;38;5;40mok \x1b[38;5;196mko\x1b[0m")
        self.assertEqual(ansi_join(), "")
        with self.assertRaises(ValueError):
            ansi_join(123)

    def test_ansi_strip(self):
        data = "\x1b[1;38;5;40mok \x1b[38;5;196mko\x1b[0m"
        self.assertEqual(ansi_strip(data), "ok ko")
        self.assertEqual(ansi_strip("plain"), "plain")

    def test_tty_detection(self):
        self.assertFalse(is_file_tty(io.StringIO()))
        self.assertFalse(is_file_tty(object()))
        self.assertTrue(is_file_tty(_FakeTty()))

    def test_can_style(self):
        self.assertFalse(can_style(io.StringIO()))
        self.assertTrue(can_style(io.StringIO(), True))
        self.assertFalse(can_style(_FakeTty(), False))

        env = {k: v for k, v in os.environ.items() if k != "NO_COLOR"}
        with unittest.mock.patch.dict(os.environ, env, clear=True):
            self.assertTrue(can_style(_FakeTty()))
        with unittest.mock.patch.dict(os.environ, {"NO_COLOR": "1"}):
            self.assertFalse(can_style(_FakeTty()))


class TestHighlighting(TestCaseBase):
    def test_highlighting(self):
        TESTS = (
            'criterion 3 PASS',
            'criterion \x1b[38;5;51m3\x1b[39m \x1b[38;5;40mPASS\x1b[39m',

            'is_median=false',
            '\x1b[38;5;208mis_median\x1b[39m=\x1b[38;5;196mfalse\x1b[39m',

            '{"e_hat": 2, "status": null}',
            '{"\x1b[38;5;39me_hat\x1b[39m": \x1b[38;5;51m2\x1b[39m, "\x1b[38;5;39mstatus\x1b[39m": \x1b[38;5;208mnull\x1b[39m}',  # noqa: E501

            'ValidationError: bad edge',
            '\x1b[38;5;196mValidationError\x1b[39m: bad edge',

            'NotMedian and NotFound',
            '\x1b[38;5;196mNotMedian\x1b[39m and \x1b[38;5;208mNotFound\x1b[39m',

            'SizeLimitExceeded at -12 and 0.25',
            '\x1b[38;5;196mSizeLimitExceeded\x1b[39m at \x1b[38;5;51m-12\x1b[39m and \x1b[38;5;51m0.25\x1b[39m',  # noqa: E501

            'K3xK3 v2 1.2.3',
            'K3xK3 v2 1.2.3',
        )

        hl = select_highlighter()
        self.assertIsInstance(hl, ReportHighlighter)
        tests_it = iter(TESTS)
        for text, expected in zip(tests_it, tests_it):
            with self.subTest(text=text):
                output = hl(text)
                self.assertEqual(output, expected)
                self.assertEqual(ansi_strip(output), text)

    def test_invalid(self):
        hl = ReportHighlighter()
        self.assertEqual(hl(""), "")
        with self.assertRaises(ValueError):
            hl(b"PASS")

    def test_select(self):
        self.assertIsNone(select_highlighter(False))
        self.assertIs(select_highlighter(str.upper), str.upper)
        with self.assertRaises(ValueError):
            select_highlighter(3)


if __name__ == "__main__":
    unittest.main()
