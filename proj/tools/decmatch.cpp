#include <cstdio>
int main() { std::puts("decmatch: CLI wiring pending"); return 0; }
