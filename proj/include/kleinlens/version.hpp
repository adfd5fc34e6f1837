#pragma once

#define KLEINLENS_VERSION "0.1.0"
