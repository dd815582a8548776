// SPDX-License-Identifier: MIT
/**
 * @file main.cpp
 * @brief doctest entry point for the unit test binary.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
