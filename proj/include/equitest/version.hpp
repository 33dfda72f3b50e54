#ifndef EQUITEST_VERSION_HPP
#define EQUITEST_VERSION_HPP

namespace equitest {

inline constexpr const char* kVersion = "0.1.0";

}

#endif
