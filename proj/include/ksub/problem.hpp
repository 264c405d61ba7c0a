#ifndef KSUB_PROBLEM_HPP_
#define KSUB_PROBLEM_HPP_

#include <string>

#include "ksub/core.hpp"
#include "ksub/oracles.hpp"

namespace ksub {

/// An instance together with its objective, as stored in an instance file.
struct Problem {
    std::string name;
    Instance instance;
    Oracle oracle;

    /// Shift removed from a tabular table at load time (0 otherwise).
    double oracle_offset() const {
        if (auto *t = std::get_if<TabularOracle>(&oracle.variant()))
            return t->offset();
        return 0.0;
    }
};

} // namespace ksub

#endif // KSUB_PROBLEM_HPP_
