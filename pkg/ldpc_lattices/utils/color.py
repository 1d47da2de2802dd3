"""ANSI styles for terminal output."""
from enum import IntEnum


class Style(IntEnum):
    """SGR codes used by the log formatter."""

    end = 0
    bold = 1
    red = 31
    green = 32
    yellow = 33
    purple = 35
    cyan = 36
    light_gray = 37
    dark_gray = 90
    light_red = 91
    light_yellow = 93
    light_cyan = 96


def paint(src: str, *styles: Style) -> str:
    """Wrap text in ANSI escape sequences.

    Args:
        src (str): text to colour
        *styles (Style): one or more styles, applied together

    Returns:
        str: the escaped text

    Raises:
        ValueError: no style given
    """
    if not styles:
        raise ValueError("at least 1 style")

    codes = ";".join(str(int(style)) for style in styles)
    return f"\033[{codes}m{src}\033[{int(Style.end)}m"
