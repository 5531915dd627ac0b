"""Server entry point: `modelserver --port 8840`."""

import click
import uvicorn

from .app import create_app


@click.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8840, show_default=True, type=int)
@click.option(
    "--mode", default=None,
    type=click.Choice(["mock", "checkpoint"]),
    help="Overrides MODELSERVER_MODE (default mock).")
def main(host: str, port: int, mode: str | None) -> None:
    uvicorn.run(create_app(mode), host=host, port=port, log_level="info")


if __name__ == "__main__":
    main()
