from gpcp.cli import main

main()
