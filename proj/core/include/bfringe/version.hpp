#ifndef BFRINGE_VERSION_HPP
#define BFRINGE_VERSION_HPP

#define BFRINGE_VERSION "0.1.0"

#endif
