// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "translab/cli.hpp"

int main(int argc, char** argv) {
  try {
    const translab::RunConfig cfg = translab::parse(argc, argv);
    return translab::dispatch(cfg, std::cout);
  } catch (const translab::Error& e) {
    std::cerr << "translab: " << e.what() << "\n";
    return translab::exit_code(e);
  } catch (const std::exception& e) {
    std::cerr << "translab: internal error: " << e.what() << "\n";
    return 1;
  }
}
