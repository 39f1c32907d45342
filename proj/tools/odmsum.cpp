// CLI entry point; subcommands are filled in as the library grows.
#include <cstdio>

int main() {
  std::puts("odmsum: not wired up yet");
  return 1;
}
