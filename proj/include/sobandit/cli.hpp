#pragma once

namespace sobandit {

// Full command-line interface (run / cover / bounds subcommands).
int cli_main(int argc, char** argv);

}  // namespace sobandit
