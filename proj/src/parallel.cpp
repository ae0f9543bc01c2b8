#include "platoon_lab/parallel.hpp"

#include <cstdlib>
#include <string>

namespace platoon_lab {

unsigned worker_count() {
    unsigned cap = 0;
    if (const char* env = std::getenv("PLATOON_LAB_THREADS")) {
        try {
            cap = static_cast<unsigned>(std::stoul(env));
        } catch (const std::exception&) {
            cap = 0;
        }
    }
    if (cap == 0) cap = std::max(1u, std::thread::hardware_concurrency());
    return cap;
}

}  // namespace platoon_lab
