#pragma once

namespace pellpow2 {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kCertificateFormat = "pellpow2-certificate";
inline constexpr int kCertificateVersion = 1;

}  // namespace pellpow2
