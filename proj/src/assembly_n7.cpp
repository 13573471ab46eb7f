#include "assembly_impl.hpp"

namespace isc {
ISC_INSTANTIATE_ASSEMBLY(7)
}
