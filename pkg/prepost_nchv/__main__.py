from prepost_nchv import cli


cli(prog_name='prepost_nchv')
