#include "memgne/harness.hpp"

#include <ostream>
#include <sstream>

namespace memgne {

void write_trajectory_csv(std::ostream& os, const Trajectory& t)
{
    os << "loop,k,i,l,count,err_k\n";
    for (std::size_t loop = 0; loop < t.states.size(); ++loop) {
        const auto& s = t.states[loop];
        std::size_t l = 0;
        for (std::size_t k = 0; k < s.z.size(); ++k)
            for (std::size_t j = 0; j < s.z[k].size(); ++j, ++l) {
                const auto& ref = t.index.at(l);
                os << loop << ',' << ref.k << ',' << ref.slot << ',' << ref.l << ',' << s.z[k][j] << ',' << s.err[k]
                   << '\n';
            }
    }
}

std::string trajectory_csv(const Trajectory& t)
{
    std::ostringstream os;
    write_trajectory_csv(os, t);
    return os.str();
}

} // namespace memgne
