#include <string>
#include <vector>

#include "fuzzy_potts/cli.hpp"

int main(int argc, char** argv) {
  return fuzzy_potts::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
