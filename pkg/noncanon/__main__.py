"""Allow running noncanon as a module."""
from .cli import main

main(prog_name="noncanon")
