#include <cstdio>

int main() {
    std::puts("semigroup-lab: CLI under construction");
    return 0;
}
