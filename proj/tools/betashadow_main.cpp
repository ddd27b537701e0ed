#include "betashadow/cli.hpp"

int main(int argc, char** argv)
{
    return betashadow::cli::run(argc, argv);
}
