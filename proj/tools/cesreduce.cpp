#include <cesreduce/cli.hpp>

int main(int argc, char** argv)
{
    return cesreduce::run_cli(argc, argv);
}
