// cli.hpp — entry point for the strainheat command-line tool.

#pragma once

namespace strainheat {

// Subcommands:
//   sweep --config <path> --out <path> [--threads N]
//   reproduce <fig2|fig3|fig4|fig5|fig6|fig7|fig8|fig9a|fig9b|fig9c|fig9d>
//             --out <dir> [--threads N]
//   resonance [--vp-min X] [--vp-max Y] [--grid N]
// Returns 0 on success, nonzero with a diagnostic on stderr otherwise.
int cli_main(int argc, const char* const* argv);

}  // namespace strainheat
