# Command-line surface
from .run_config import RunConfig, RUN_FAMILIES, GOLDEN_CONJUGATE
from .commands import COMMANDS, TABLE_COLUMNS, register_commands, cmd_table, cmd_verify, cmd_measure, cmd_dgt, cmd_polygon
