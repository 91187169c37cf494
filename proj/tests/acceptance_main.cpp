// Acceptance runner: one PASS/FAIL line per criterion.
//   acceptance [--criterion N]... [--threads N]
#include "acceptance.hpp"

#include <cstdlib>
#include <cstring>
#include <iostream>

int main(int argc, char **argv) {
    using namespace chernshift::cli;
    std::vector<int> ids;
    AcceptanceSettings set;
    for (int i = 1; i < argc; ++i) {
        bool more = i + 1 < argc;
        if (!std::strcmp(argv[i], "--criterion") && more) {
            ids.push_back(std::atoi(argv[++i]));
        } else if (!std::strcmp(argv[i], "--threads") && more) {
            set.threads = static_cast<unsigned>(std::atoi(argv[++i]));
        } else {
            std::cerr << "usage: acceptance [--criterion N]... [--threads N]\n";
            return 2;
        }
    }
    if (ids.empty())
        ids = criterion_ids();
    for (int id : ids)
        if (!has_criterion(id)) {
            std::cerr << "no criterion " << id << "\n";
            return 2;
        }
    return run_acceptance(ids, set, std::cout) ? 0 : 1;
}
