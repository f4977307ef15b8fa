# Copyright (c) Jean-Charles Lefebvre
# SPDX-License-Identifier: MIT

from .cmd import main

main()
