"""RD_alpha spectra of joined unions and power graphs of finite groups."""
