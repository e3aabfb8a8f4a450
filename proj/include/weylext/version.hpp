#pragma once

#define WEYLEXT_VERSION "0.1.0"
