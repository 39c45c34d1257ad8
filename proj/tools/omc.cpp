// Placeholder CLI; subcommands land with the corresponding modules.
#include <cstdio>

int main() {
    std::puts("omc: not yet wired");
    return 3;
}
