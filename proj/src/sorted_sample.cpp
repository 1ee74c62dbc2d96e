#include "lthill/sorted_sample.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace lthill {

namespace {

void check_positive(const std::vector<double>& values) {
    std::size_t bad = 0;
    for (double v : values) {
        if (!(v > 0.0) || !std::isfinite(v)) ++bad;
    }
    if (bad > 0) {
        std::ostringstream msg;
        msg << "sample contains " << bad << " non-positive or non-finite value(s)";
        throw std::domain_error(msg.str());
    }
    if (values.size() < 2) {
        throw std::domain_error("sample needs at least two values");
    }
}

}  // namespace

SortedSample SortedSample::from_data(std::vector<double> values) {
    check_positive(values);
    std::sort(values.begin(), values.end(), std::greater<double>());
    return SortedSample(std::move(values));
}

SortedSample SortedSample::from_sorted(std::vector<double> values) {
    check_positive(values);
    for (std::size_t i = 0; i + 1 < values.size(); ++i) {
        if (values[i] < values[i + 1]) {
            throw std::invalid_argument("values are not in descending order");
        }
    }
    return SortedSample(std::move(values));
}

LogExcesses log_excesses(const SortedSample& s, std::size_t k) {
    if (k < 1 || k >= s.size()) {
        throw std::out_of_range("log_excesses requires 1 <= k <= n-1");
    }
    LogExcesses out;
    out.k = k;
    out.z.resize(k);
    const double log_base = std::log(s[k]);
    for (std::size_t i = 0; i < k; ++i) {
        out.z[i] = std::log(s[i]) - log_base;
    }
    return out;
}

}  // namespace lthill
