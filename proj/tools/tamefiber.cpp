#include "tamefiber/cli/cli.hpp"

int main(int argc, char** argv)
{
  return tamefiber::cli::main_entry(argc, argv);
}
