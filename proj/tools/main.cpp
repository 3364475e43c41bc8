#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return fig8::cli::run(argc, argv, std::cout, std::cerr);
}
