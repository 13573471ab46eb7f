#pragma once

#include <climits>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace isc {

inline int max_threads()
{
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

// Keeps the exception thrown for the lowest index inside a parallel loop so
// the error reported does not depend on scheduling.
class ErrorSlot {
public:
    void capture(int index)
    {
#pragma omp critical(isc_error_slot)
        {
            if (index < index_) {
                index_ = index;
                ptr_ = std::current_exception();
            }
        }
    }
    void rethrow() const
    {
        if (ptr_) std::rethrow_exception(ptr_);
    }

private:
    std::exception_ptr ptr_;
    int index_ = INT_MAX;
};

}  // namespace isc
