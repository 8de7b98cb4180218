// Command-line front end; subcommands land here as the library grows.
#include <cstdio>

int main() {
    std::puts("gbe: not yet wired up");
    return 2;
}
