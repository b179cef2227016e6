// Placeholder entry point; the subcommand dispatcher lands with the CLI.
#include <cstdio>

int main() {
    std::puts("mallows: not yet wired");
    return 0;
}
