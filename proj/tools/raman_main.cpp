#include <iostream>
#include <string>
#include <vector>

#include "raman/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    if (args.empty() || args.front() == "-h" || args.front() == "--help") {
        std::cout << raman::cli::usage_text();
        return args.empty() ? raman::cli::kExitUsage : raman::cli::kExitOk;
    }
    return raman::cli::run(args, std::cout, std::cerr);
}
