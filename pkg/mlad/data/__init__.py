from .builtin_macros import BUILTIN_MACROS, DISPLAY_NAMES, MacroSource

__all__ = ['BUILTIN_MACROS', 'DISPLAY_NAMES', 'MacroSource']
