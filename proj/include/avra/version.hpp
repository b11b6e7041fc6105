#ifndef AVRA_VERSION_HPP
#define AVRA_VERSION_HPP

#define AVRA_VERSION "0.1.0"

namespace avra {
inline const char* version() { return AVRA_VERSION; }
}

#endif
