#include <iostream>

#include "gangsched/cli.hpp"

int main(int argc, char **argv)
{
    return gangsched::cli::run(argc, argv, std::cout, std::cerr);
}
