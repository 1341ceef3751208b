"""
MCP server for sigma-orient.
Exposes the exact solver and the standard construction as MCP tools.
"""
import asyncio
import sys
from pathlib import Path

from mcp.server import NotificationOptions, Server
from mcp.server.models import InitializationOptions
from mcp.server.stdio import stdio_server
from mcp.types import TextContent, Tool

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from backend.codec import parse_canonical  # noqa: E402
from backend.config import configure_logging, load_config  # noqa: E402
from backend.errors import SigmaError  # noqa: E402
from backend.formatter import format_outcome_summary, format_standard_summary  # noqa: E402
from backend.orient import standard_orientation  # noqa: E402
from backend.solver import solve  # noqa: E402

server = Server("sigma-orient")

SEQUENCE_SCHEMA = {
    "type": "object",
    "properties": {
        "sequence": {
            "type": "string",
            "description": "Canonical defining sequence, e.g. 'k3n12:000121' (k parts, n vertices, labels a_1..a_{n/2})",
        }
    },
    "required": ["sequence"],
}


@server.list_tools()
async def handle_list_tools() -> list[Tool]:
    return [
        Tool(
            name="solve_partition",
            description="""Decide whether a cyclic edge partition of K_n admits a transitive orientation
that the rotation v -> v+1 maps part by part (reversing only edges of the last part).

Returns a witness vertex ordering when one exists.

Examples:
- "k3n12:000121" (has one, but no bitonic one)
- "k3n9:0000" (none: n = 3k never works)
""",
            inputSchema=SEQUENCE_SCHEMA,
        ),
        Tool(
            name="standard_orientation",
            description="Build the bitonic (standard) ordering of a defining sequence, if it has one.",
            inputSchema=SEQUENCE_SCHEMA,
        ),
    ]


@server.call_tool()
async def handle_call_tool(name: str, arguments: dict) -> list[TextContent]:
    if name not in ("solve_partition", "standard_orientation"):
        raise ValueError(f"Unknown tool: {name}")

    text = arguments.get("sequence", "")
    if not text:
        return [TextContent(type="text", text="Error: please provide a sequence such as k3n12:000121.")]

    try:
        s = parse_canonical(text)
        if name == "solve_partition":
            summary = format_outcome_summary(solve(s, load_config().budget))
        else:
            summary = format_standard_summary(s, standard_orientation(s))
    except SigmaError as e:
        return [TextContent(type="text", text=f"Error: {e}")]
    return [TextContent(type="text", text=summary)]


async def main():
    """Run the MCP server over stdin/stdout."""
    configure_logging(load_config().log_level)
    async with stdio_server() as (read_stream, write_stream):
        await server.run(
            read_stream,
            write_stream,
            InitializationOptions(
                server_name="sigma-orient",
                server_version="1.0.0",
                capabilities=server.get_capabilities(
                    notification_options=NotificationOptions(),
                    experimental_capabilities={},
                ),
            ),
        )


if __name__ == "__main__":
    asyncio.run(main())
