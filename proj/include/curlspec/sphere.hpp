#pragma once

#include "curlspec/spectrum.hpp"

namespace curlspec {

// Multiplicity of the curl eigenvalue +-((n+1)/2 + k) on the round unit
// sphere S^n, n odd:
//
//     (n+k)! / ( ((n-1)/2)!^2 * k! * ((n+1)/2 + k) )
//
// Evaluated with exact integers; the division is checked to be exact and a
// failure indicates a formula error. For n = 3 this reduces to (k+1)(k+3).
BigInt sphere_multiplicity(int n, int k);

// Volume of the round unit S^n for odd n: 2*pi^((n+1)/2) / ((n-1)/2)!.
PiRational sphere_volume(int n);

// Both signs, k = 0..k_max. The spectrum is symmetric; truncation is
// (n+1)/2 + k_max.
Spectrum sphere_spectrum(int n, int k_max);

}  // namespace curlspec
