#include "t3/errors.hpp"

#include <sstream>

namespace t3 {

std::string ExistenceFailed::rank_suffix(const std::vector<std::pair<std::string, long>>& ranks) {
    std::ostringstream os;
    os << " [";
    for (size_t i = 0; i < ranks.size(); ++i) {
        if (i) os << ", ";
        os << ranks[i].first << " = " << ranks[i].second;
    }
    os << "]";
    return os.str();
}

std::string NonUniformRank::rank_suffix(const std::vector<long>& ranks) {
    std::ostringstream os;
    os << " [slice ranks:";
    for (long r : ranks) os << ' ' << r;
    os << "]";
    return os.str();
}

} // namespace t3
