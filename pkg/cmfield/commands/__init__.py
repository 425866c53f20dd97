''' One module per subcommand: NAME, HELP, add_arguments(parser) and run(args) -> exit code '''
from cmfield.commands import build, certify, convergents, diagonal, euler, heatmap, search, validate

COMMANDS = {module.NAME: module for module in
            (validate, build, convergents, heatmap, certify, diagonal, search, euler)}
