from src.controllers.cli_controller import cli


def main() -> None:
    """Console entry point."""
    cli(prog_name="sctoolkit")


if __name__ == "__main__":
    main()
